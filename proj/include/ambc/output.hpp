// SPDX-License-Identifier: Apache-2.0
//
// ambc: link-level simulator for multi-antenna ambient backscatter receivers
// Copyright (C) 2026 The ambc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef AMBC_OUTPUT_HPP
#define AMBC_OUTPUT_HPP

#include "experiment.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace ambc
{
    inline constexpr const char *result_csv_header =
        "sweep_value,variant,bits,bit_errors,ber,symbols,symbol_errors,ser,seed";

    inline void write_result_csv(std::ostream &os, const ResultTable &t)
    {
        os << result_csv_header << "\n";
        for (const auto &r : t.rows)
            os << format_number(r.sweep_value) << ',' << r.variant << ',' << r.bits << ',' << r.bit_errors << ','
               << format_number(r.ber) << ',' << r.symbols << ',' << r.symbol_errors << ','
               << format_number(r.ser) << ',' << r.seed << "\n";
    }

    inline std::string result_csv_string(const ResultTable &t)
    {
        std::ostringstream os;
        write_result_csv(os, t);
        return os.str();
    }

    inline std::vector<std::string> split_csv_line(const std::string &line)
    {
        std::vector<std::string> out;
        std::string cur;
        for (char ch : line)
        {
            if (ch == ',')
            {
                out.push_back(cur);
                cur.clear();
            }
            else if (ch != '\r')
                cur.push_back(ch);
        }
        out.push_back(cur);
        return out;
    }

    inline std::vector<ResultRow> parse_result_csv(std::istream &is)
    {
        std::string line;
        require(bool(std::getline(is, line)), "empty CSV");
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        require(line == result_csv_header, "unexpected CSV header");
        std::vector<ResultRow> rows;
        while (std::getline(is, line))
        {
            if (line.empty())
                continue;
            const auto f = split_csv_line(line);
            require(f.size() == 9, "CSV row must have 9 fields");
            ResultRow r;
            r.sweep_value = std::stod(f[0]);
            r.variant = f[1];
            r.bits = std::stoull(f[2]);
            r.bit_errors = std::stoull(f[3]);
            r.ber = std::stod(f[4]);
            r.symbols = std::stoull(f[5]);
            r.symbol_errors = std::stoull(f[6]);
            r.ser = std::stod(f[7]);
            r.seed = std::stoull(f[8]);
            rows.push_back(std::move(r));
        }
        return rows;
    }

    inline std::ofstream open_output(const std::string &path)
    {
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot write '" + path + "'");
        return os;
    }

    inline void finish_output(std::ofstream &os, const std::string &path)
    {
        os.flush();
        if (!os)
            throw std::runtime_error("write failed for '" + path + "'");
    }

    inline void write_result_csv(const std::string &path, const ResultTable &t)
    {
        require(!t.rows.empty(), "result table is empty");
        auto os = open_output(path);
        write_result_csv(os, t);
        finish_output(os, path);
    }

    // Per-point operating conditions, with the run metadata in leading comment lines
    inline void write_meta_csv(std::ostream &os, const ResultTable &t)
    {
        os << "# name=" << t.name << "\n";
        os << "# version=" << t.version << "\n";
        os << "# config_hash=" << std::hex << std::setw(16) << std::setfill('0') << t.config_hash << std::dec
           << std::setfill(' ') << "\n";
        os << "# seed=" << t.seed << "\n";
        os << "# sweep_axis=" << t.sweep_axis << "\n";
        os << "sweep_value,series_value,gamma_db,gamma_model_db,delta_db,eta2_sq_db,effective_snr_db,phi_rad,d11,n_r,"
              "preamble_len,code_order\n";
        for (const auto &p : t.points)
            os << format_number(p.sweep_value) << ',' << (p.series_value ? format_number(*p.series_value) : "")
               << ',' << format_number(p.gamma_ref_db) << ',' << format_number(p.gamma_model_db) << ','
               << format_number(p.delta_db) << ',' << format_number(p.eta2_sq_db) << ','
               << format_number(p.effective_snr_db) << ',' << format_number(p.phi) << ','
               << format_number(p.d11) << ',' << p.n_r << ',' << p.preamble_len << ',' << p.code_order << "\n";
    }

    inline void write_meta_csv(const std::string &path, const ResultTable &t)
    {
        auto os = open_output(path);
        write_meta_csv(os, t);
        finish_output(os, path);
    }

    inline void write_coverage_csv(std::ostream &os, const CoverageTable &t)
    {
        os << "x,y,d11,status,symbols,symbol_errors,ser,log10_ser,delta_db,eta2_sq_db\n";
        for (const auto &c : t.cells)
        {
            os << format_number(c.x) << ',' << format_number(c.y) << ',' << format_number(c.d11) << ','
               << (c.skipped ? "skipped" : "ok") << ',';
            if (c.skipped)
                os << ",,,,,\n";
            else
                os << c.symbols << ',' << c.symbol_errors << ',' << format_number(c.ser) << ','
                   << format_number(c.log10_ser) << ',' << format_number(c.delta_db) << ','
                   << format_number(c.eta2_sq_db) << "\n";
        }
    }

    inline void write_analytic_csv(std::ostream &os, const std::vector<AnalyticRow> &rows)
    {
        os << "gamma_db,gamma_model_db,receiver,modulation,p_e,threshold_case\n";
        for (const auto &r : rows)
            os << format_number(r.gamma_db) << ',' << format_number(r.gamma_model_db) << ',' << r.receiver << ','
               << to_string(r.modulation) << ',' << format_number(r.p_e) << ',' << r.threshold_case << "\n";
    }

    inline void write_case_map_csv(std::ostream &os, const std::vector<CaseCell> &cells)
    {
        os << "x,y,status,case_bpsk,case_ook,eta2_sq_db\n";
        for (const auto &c : cells)
        {
            os << format_number(c.x) << ',' << format_number(c.y) << ',' << (c.skipped ? "skipped" : "ok") << ',';
            if (c.skipped)
                os << ",,\n";
            else
                os << to_string(c.bpsk) << ',' << to_string(c.ook) << ',' << format_number(c.eta2_sq_db) << "\n";
        }
    }

    struct PlotSeries
    {
        std::string label;
        std::vector<double> x, y;
    };

    // Log-y line plot as standalone SVG. Zero or negative y values are dropped.
    inline void write_svg_plot(std::ostream &os, const std::vector<PlotSeries> &series, const std::string &title,
                               const std::string &xlabel, const std::string &ylabel)
    {
        const double W = 720, H = 480, ml = 70, mr = 190, mt = 40, mb = 55;
        double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, lymin = xmin, lymax = -xmin;
        for (const auto &s : series)
            for (std::size_t i = 0; i < s.x.size(); ++i)
            {
                xmin = std::min(xmin, s.x[i]);
                xmax = std::max(xmax, s.x[i]);
                if (s.y[i] > 0)
                {
                    lymin = std::min(lymin, std::floor(std::log10(s.y[i])));
                    lymax = std::max(lymax, std::ceil(std::log10(s.y[i])));
                }
            }
        if (!std::isfinite(xmin))
            xmin = 0, xmax = 1;
        if (xmax == xmin)
            xmax = xmin + 1;
        if (!std::isfinite(lymin))
            lymin = -1, lymax = 0;
        if (lymax == lymin)
            lymax = lymin + 1;
        const double pw = W - ml - mr, ph = H - mt - mb;
        auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
        auto py = [&](double y) { return mt + (lymax - std::log10(y)) / (lymax - lymin) * ph; };
        static const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                       "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
           << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
        os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        os << "<text x=\"" << ml + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title
           << "</text>\n";
        for (double e = lymin; e <= lymax + 1e-9; e += 1)
        {
            const double y = py(std::pow(10.0, e));
            os << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << ml + pw << "\" y2=\"" << y
               << "\" stroke=\"#ddd\"/>\n";
            os << "<text x=\"" << ml - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << int(e)
               << "</text>\n";
        }
        for (int i = 0; i <= 5; ++i)
        {
            const double xv = xmin + (xmax - xmin) * i / 5.0;
            os << "<text x=\"" << px(xv) << "\" y=\"" << mt + ph + 18 << "\" text-anchor=\"middle\">"
               << compact_number(xv) << "</text>\n";
        }
        os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
           << "\" fill=\"none\" stroke=\"black\"/>\n";
        os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << xlabel
           << "</text>\n";
        os << "<text transform=\"translate(18," << mt + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
           << ylabel << "</text>\n";
        for (std::size_t k = 0; k < series.size(); ++k)
        {
            const auto &s = series[k];
            const char *col = colors[k % 10];
            os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i)
                if (s.y[i] > 0)
                    os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
            os << "\"/>\n";
            for (std::size_t i = 0; i < s.x.size(); ++i)
                if (s.y[i] > 0)
                    os << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"2.5\" fill=\"" << col
                       << "\"/>\n";
            const double ly = mt + 14 + 16 * double(k);
            os << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << ml + pw + 30 << "\" y2=\""
               << ly - 4 << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
            os << "<text x=\"" << ml + pw + 35 << "\" y=\"" << ly << "\">" << s.label << "</text>\n";
        }
        os << "</svg>\n";
    }

    inline std::vector<PlotSeries> table_series(const ResultTable &t)
    {
        std::vector<PlotSeries> out;
        for (const auto &r : t.rows)
        {
            auto it = std::find_if(out.begin(), out.end(), [&](const PlotSeries &s) { return s.label == r.variant; });
            if (it == out.end())
            {
                out.push_back({r.variant, {}, {}});
                it = out.end() - 1;
            }
            it->x.push_back(r.sweep_value);
            it->y.push_back(r.ber);
        }
        return out;
    }

    inline void write_svg_plot(const std::string &path, const ResultTable &t)
    {
        require(!t.rows.empty(), "result table is empty");
        auto os = open_output(path);
        write_svg_plot(os, table_series(t), t.name, t.sweep_axis, "BER");
        finish_output(os, path);
    }
}

#endif
