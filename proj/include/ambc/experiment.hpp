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

#ifndef AMBC_EXPERIMENT_HPP
#define AMBC_EXPERIMENT_HPP

#include "analytic.hpp"
#include "config.hpp"
#include "parallel.hpp"
#include "phy.hpp"
#include "receiver.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>

namespace ambc
{
    inline constexpr const char *library_version = "ambc 0.1.0";

    // Resolved operating point of one sweep cell
    struct PointSetup
    {
        double sweep_value = 0.0;
        std::optional<double> series_value;
        ScenarioConfig scenario;
        int preamble_len = 64;
        int code_order = 1;
        double gamma_ref_db = 0.0;   // as configured
        double gamma_model_db = 0.0; // SNR of the unit-norm model used to synthesize
        ChannelState chan;
    };

    struct ResultRow
    {
        double sweep_value = 0.0;
        std::string variant;
        std::uint64_t bits = 0, bit_errors = 0;
        double ber = 0.0;
        std::uint64_t symbols = 0, symbol_errors = 0;
        double ser = 0.0;
        std::uint64_t seed = 0;
        std::uint64_t chips = 0, chip_errors = 0; // not part of the CSV contract
        double wall_time_s = 0.0;                 // not part of the CSV contract

        bool operator==(const ResultRow &o) const
        {
            return sweep_value == o.sweep_value && variant == o.variant && bits == o.bits &&
                   bit_errors == o.bit_errors && ber == o.ber && symbols == o.symbols &&
                   symbol_errors == o.symbol_errors && ser == o.ser && seed == o.seed;
        }
    };

    struct PointInfo
    {
        double sweep_value = 0.0;
        std::optional<double> series_value;
        double gamma_ref_db = 0.0, gamma_model_db = 0.0;
        double delta_db = 0.0, eta2_sq_db = 0.0, effective_snr_db = 0.0;
        double phi = 0.0, d11 = 0.0;
        int n_r = 0, preamble_len = 0, code_order = 0;
    };

    struct ResultTable
    {
        std::vector<ResultRow> rows;
        std::vector<PointInfo> points;
        std::string name;
        std::string sweep_axis;
        std::uint64_t config_hash = 0;
        std::uint64_t seed = 0;
        std::string version = library_version;
    };

    inline std::string config_fingerprint(const ExperimentConfig &c)
    {
        nlohmann::json j;
        j["scenario"] = {{"d01", c.scenario.d01},
                         {"n_r", c.scenario.n_r},
                         {"polar", c.scenario.tag.polar},
                         {"d11", c.scenario.tag.d11},
                         {"angle", c.scenario.tag.angle},
                         {"x", c.scenario.tag.xy.x},
                         {"y", c.scenario.tag.xy.y},
                         {"law", int(c.scenario.law)},
                         {"axis", int(c.scenario.axis)}};
        std::vector<std::string> mods, kinds, vars;
        for (auto m : c.modulations)
            mods.emplace_back(to_string(m));
        for (auto k : c.code_kinds)
            kinds.emplace_back(to_string(k));
        for (auto v : c.variants)
            vars.emplace_back(to_string(v));
        j["modulations"] = mods;
        j["code"] = {{"kinds", kinds}, {"r", c.code_order}};
        j["L"] = c.preamble_len;
        j["P"] = c.payload_symbols;
        j["variants"] = vars;
        j["sweep"] = {{"axis", std::string(to_string(c.sweep.axis))}, {"values", c.sweep.values}};
        if (c.series)
            j["series"] = {{"axis", std::string(to_string(c.series->axis))}, {"values", c.series->values}};
        j["gamma_db"] = c.gamma_db;
        j["snr_reference"] = int(c.snr_reference);
        j["trials"] = c.trials;
        j["seed"] = c.seed;
        j["noiseless"] = c.noiseless;
        j["receiver"] = {{"k", c.receiver.classifier.k},
                         {"l2", c.receiver.classifier.l2},
                         {"iters", c.receiver.classifier.max_iterations},
                         {"intercept", int(c.receiver.intercept)}};
        j["grid"] = {{"x", {c.grid.x_min, c.grid.x_max, c.grid.nx}},
                     {"y", {c.grid.y_min, c.grid.y_max, c.grid.ny}},
                     {"clearance", c.grid.clearance}};
        return j.dump();
    }

    inline void apply_axis(PointSetup &p, SweepAxis axis, double value, std::optional<double> &effective_snr_db)
    {
        switch (axis)
        {
        case SweepAxis::GammaDb:
            p.gamma_ref_db = value;
            break;
        case SweepAxis::EffectiveSnrDb:
            effective_snr_db = value;
            break;
        case SweepAxis::PreambleLen:
            p.preamble_len = int(value);
            break;
        case SweepAxis::CodeOrder:
            p.code_order = int(value);
            break;
        case SweepAxis::NumAntennas:
            p.scenario.n_r = int(value);
            break;
        case SweepAxis::D11:
            p.scenario.tag.d11 = value;
            break;
        }
    }

    // Model SNR from the configured one: at the reference antenna the direct power is gamma |a_1|^2
    inline double model_gamma_db(double gamma_db, SnrReference ref, const ChannelState &chan)
    {
        if (ref == SnrReference::Array)
            return gamma_db;
        return gamma_db - linear_to_db(reference_antenna_share(chan));
    }

    inline PointSetup resolve_point(const ExperimentConfig &c, double sweep_value, std::optional<double> series_value)
    {
        PointSetup p;
        p.sweep_value = sweep_value;
        p.series_value = series_value;
        p.scenario = c.scenario;
        p.preamble_len = c.preamble_len;
        p.code_order = c.code_order;
        p.gamma_ref_db = c.gamma_db;
        std::optional<double> eff;
        if (c.series)
            apply_axis(p, c.series->axis, *series_value, eff);
        apply_axis(p, c.sweep.axis, sweep_value, eff);
        p.chan = make_channel(p.scenario.spec());
        if (eff)
        {
            // gamma_model * eta2^2 = effective SNR; report the equivalent configured SNR too
            require(p.chan.eta2 > 0.0, "effective-SNR operating point needs eta2 > 0");
            p.gamma_model_db = *eff - linear_to_db(p.chan.eta2 * p.chan.eta2);
            p.gamma_ref_db = c.snr_reference == SnrReference::Array
                                 ? p.gamma_model_db
                                 : p.gamma_model_db + linear_to_db(reference_antenna_share(p.chan));
        }
        else
            p.gamma_model_db = model_gamma_db(p.gamma_ref_db, c.snr_reference, p.chan);
        return p;
    }

    inline PointInfo point_info(const PointSetup &p)
    {
        PointInfo i;
        i.sweep_value = p.sweep_value;
        i.series_value = p.series_value;
        i.gamma_ref_db = p.gamma_ref_db;
        i.gamma_model_db = p.gamma_model_db;
        i.delta_db = linear_to_db(p.chan.delta);
        i.eta2_sq_db = linear_to_db(p.chan.eta2 * p.chan.eta2);
        i.effective_snr_db = p.gamma_model_db + i.eta2_sq_db;
        i.phi = p.chan.phi;
        i.d11 = distance(p.scenario.spec().tag_pos, {p.scenario.d01 / 2.0, 0.0});
        i.n_r = p.scenario.n_r;
        i.preamble_len = p.preamble_len;
        i.code_order = p.code_order;
        return i;
    }

    // One receiver/modulation/code combination evaluated at every point
    struct Combo
    {
        Modulation modulation;
        CodeKind kind;
        ReceiverVariant variant;
        std::string label;
    };

    inline std::string format_number(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

    inline std::string compact_number(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%g", v);
        return buf;
    }

    inline std::vector<Combo> experiment_combos(const ExperimentConfig &c)
    {
        std::vector<Combo> out;
        for (auto m : c.modulations)
            for (auto k : c.code_kinds)
                for (auto v : c.variants)
                {
                    if (!variant_supports(v, m))
                        continue;
                    std::string label = std::string(to_string(v)) + "/" + std::string(to_string(m));
                    if (c.code_kinds.size() > 1)
                        label += "/" + std::string(to_string(k));
                    out.push_back({m, k, v, label});
                }
        return out;
    }

    struct Counters
    {
        std::uint64_t bits = 0, bit_errors = 0, symbols = 0, symbol_errors = 0, chips = 0, chip_errors = 0;

        void add(const FrameOutcome &o)
        {
            bits += o.n_bits;
            bit_errors += o.bit_errors;
            symbols += o.n_symbols;
            symbol_errors += o.symbol_errors;
            chips += o.n_chips;
            chip_errors += o.chip_errors;
        }
        void add(const Counters &o)
        {
            bits += o.bits;
            bit_errors += o.bit_errors;
            symbols += o.symbols;
            symbol_errors += o.symbol_errors;
            chips += o.chips;
            chip_errors += o.chip_errors;
        }
    };

    // Seeds of one Monte Carlo trial. The block seed is shared by every frame of the trial so that
    // all receivers and codes see the same ambient and noise draws.
    struct TrialSeeds
    {
        std::uint64_t block;
        std::uint64_t bits;
    };

    inline TrialSeeds trial_seeds(std::uint64_t master, std::uint64_t point, std::uint64_t trial)
    {
        const std::uint64_t t = derive_seed(master, point, trial);
        return {splitmix64(t ^ 0x0b10c0ull), splitmix64(t ^ 0xb175ull)};
    }

    inline std::vector<std::uint8_t> random_bits(std::uint64_t seed, std::size_t n)
    {
        Rng rng(seed);
        std::vector<std::uint8_t> b(n);
        for (auto &x : b)
            x = rng.bit();
        return b;
    }

    // Runs every combo on one trial of one point
    inline void run_trial(const ExperimentConfig &c, const PointSetup &p, const std::vector<Combo> &combos,
                          const std::vector<Codebook> &books, const TrialSeeds &seeds, std::vector<Counters> &acc)
    {
        const int k_max = p.code_order + 1;
        const auto bits_all = random_bits(seeds.bits, std::size_t(c.payload_symbols) * k_max);
        const double gamma = db_to_linear(p.gamma_model_db);

        std::size_t i = 0;
        while (i < combos.size())
        {
            // Combos sharing (modulation, code) share a frame and block
            const auto m = combos[i].modulation;
            const auto kind = combos[i].kind;
            const Codebook &book = books[i];
            const int k = book.code().k();
            std::vector<std::uint8_t> bits(bits_all.begin(), bits_all.begin() + std::size_t(c.payload_symbols) * k);
            const Frame frame = build_frame(bits, p.preamble_len, book.code(), m);
            const SampleBlock block = synthesize_block(p.chan, frame, p.gamma_model_db, seeds.block, c.noiseless);
            FrameDemodulator demod(block, frame, p.chan, gamma, book, c.receiver);
            for (; i < combos.size() && combos[i].modulation == m && combos[i].kind == kind; ++i)
                acc[i].add(demod.run(combos[i].variant));
        }
    }

    using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

    inline ResultTable run_experiment(const ExperimentConfig &c, int workers_override = -1,
                                      const ProgressFn &progress = {})
    {
        c.validate();
        const auto combos = experiment_combos(c);

        std::vector<PointSetup> points;
        const std::vector<std::optional<double>> series_vals = [&] {
            std::vector<std::optional<double>> v;
            if (c.series)
                for (double s : c.series->values)
                    v.emplace_back(s);
            else
                v.emplace_back(std::nullopt);
            return v;
        }();
        for (const auto &s : series_vals)
            for (double x : c.sweep.values)
                points.push_back(resolve_point(c, x, s));

        // Codebooks per point and combo
        std::vector<std::vector<Codebook>> books(points.size());
        for (std::size_t pi_ = 0; pi_ < points.size(); ++pi_)
            for (const auto &cb : combos)
                books[pi_].emplace_back(cb.kind == CodeKind::Uncoded ? CodeSpec::uncoded()
                                                                     : CodeSpec{cb.kind, points[pi_].code_order});

        const int workers = resolve_workers(workers_override >= 0 ? workers_override : c.workers);
        const std::size_t n_tasks = points.size() * std::size_t(c.trials);
        // acc[worker][point][combo]
        std::vector<std::vector<std::vector<Counters>>> acc(
            workers, std::vector<std::vector<Counters>>(points.size(), std::vector<Counters>(combos.size())));
        std::vector<double> point_time(points.size(), 0.0);
        std::atomic<std::size_t> done{0};
        std::mutex time_mu;

        parallel_for(n_tasks, workers, [&](std::size_t task, int w) {
            const std::size_t pi_ = task / c.trials, t = task % c.trials;
            const auto t0 = std::chrono::steady_clock::now();
            run_trial(c, points[pi_], combos, books[pi_], trial_seeds(c.seed, pi_, t), acc[w][pi_]);
            const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            {
                std::lock_guard<std::mutex> lk(time_mu);
                point_time[pi_] += dt;
            }
            const std::size_t d = ++done;
            if (progress)
                progress(d, n_tasks);
        });

        ResultTable table;
        table.name = c.name;
        table.sweep_axis = std::string(to_string(c.sweep.axis));
        table.seed = c.seed;
        table.config_hash = fnv1a(config_fingerprint(c));
        for (std::size_t pi_ = 0; pi_ < points.size(); ++pi_)
        {
            table.points.push_back(point_info(points[pi_]));
            for (std::size_t ci = 0; ci < combos.size(); ++ci)
            {
                Counters tot;
                for (int w = 0; w < workers; ++w)
                    tot.add(acc[w][pi_][ci]);
                ResultRow r;
                r.sweep_value = points[pi_].sweep_value;
                r.variant = combos[ci].label;
                if (c.series)
                    r.variant += "|" + std::string(to_string(c.series->axis)) + "=" +
                                 compact_number(*points[pi_].series_value);
                r.bits = tot.bits;
                r.bit_errors = tot.bit_errors;
                r.ber = tot.bits ? double(tot.bit_errors) / double(tot.bits) : 0.0;
                r.symbols = tot.symbols;
                r.symbol_errors = tot.symbol_errors;
                r.ser = tot.symbols ? double(tot.symbol_errors) / double(tot.symbols) : 0.0;
                r.chips = tot.chips;
                r.chip_errors = tot.chip_errors;
                r.seed = c.seed;
                r.wall_time_s = point_time[pi_];
                table.rows.push_back(r);
            }
        }
        return table;
    }

    // ---- coverage map ------------------------------------------------------

    struct CoverageCell
    {
        double x = 0.0, y = 0.0, d11 = 0.0;
        bool skipped = false;
        std::uint64_t symbols = 0, symbol_errors = 0;
        double ser = 0.0;
        double log10_ser = 0.0; // floored at half an error when no symbol failed
        double delta_db = 0.0, eta2_sq_db = 0.0, gamma_model_db = 0.0;
    };

    struct CoverageTable
    {
        std::vector<CoverageCell> cells;
        std::string variant;
        std::uint64_t seed = 0;
        std::uint64_t config_hash = 0;
    };

    inline double grid_coord(double lo, double hi, int n, int i)
    {
        return n == 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1);
    }

    // SER over a grid of tag positions; uses the first configured variant/modulation/code and gamma_db
    inline CoverageTable run_coverage_map(const ExperimentConfig &c, int workers_override = -1,
                                          const ProgressFn &progress = {})
    {
        c.validate();
        const auto combos_all = experiment_combos(c);
        require(!combos_all.empty(), "no usable variant");
        const std::vector<Combo> combos{combos_all.front()};
        const CodeSpec code = combos[0].kind == CodeKind::Uncoded ? CodeSpec::uncoded()
                                                                  : CodeSpec{combos[0].kind, c.code_order};

        const GridSpec &g = c.grid;
        const std::size_t n_cells = std::size_t(g.nx) * g.ny;
        std::vector<CoverageCell> cells(n_cells);
        std::vector<PointSetup> setups(n_cells);
        const Point2 rx_ref{c.scenario.d01 / 2.0, 0.0};
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
            {
                const std::size_t id = std::size_t(iy) * g.nx + ix;
                auto &cell = cells[id];
                cell.x = grid_coord(g.x_min, g.x_max, g.nx, ix);
                cell.y = grid_coord(g.y_min, g.y_max, g.ny, iy);
                cell.d11 = distance({cell.x, cell.y}, rx_ref);
                ScenarioConfig sc = c.scenario;
                sc.tag.polar = false;
                sc.tag.xy = {cell.x, cell.y};
                const auto geom_probe = sc.spec();
                const Point2 tx{-c.scenario.d01 / 2.0, 0.0};
                bool clear = distance(geom_probe.tag_pos, tx) >= g.clearance;
                const double dir = sc.axis == ArrayAxis::NegativeY ? -1.0 : 1.0;
                for (int l = 0; l < sc.n_r; ++l)
                    clear = clear && distance(geom_probe.tag_pos, {rx_ref.x, dir * antenna_spacing * l}) >= g.clearance;
                if (!clear)
                {
                    cell.skipped = true;
                    continue;
                }
                PointSetup &p = setups[id];
                p.sweep_value = double(id);
                p.scenario = sc;
                p.preamble_len = c.preamble_len;
                p.code_order = c.code_order;
                p.gamma_ref_db = c.gamma_db;
                p.chan = make_channel(sc.spec());
                p.gamma_model_db = model_gamma_db(c.gamma_db, c.snr_reference, p.chan);
                cell.delta_db = linear_to_db(p.chan.delta);
                cell.eta2_sq_db = p.chan.eta2 > 0 ? linear_to_db(p.chan.eta2 * p.chan.eta2) : -std::numeric_limits<double>::infinity();
                cell.gamma_model_db = p.gamma_model_db;
            }

        std::vector<std::size_t> active;
        for (std::size_t id = 0; id < n_cells; ++id)
            if (!cells[id].skipped)
                active.push_back(id);

        const Codebook book(code);
        const std::vector<Codebook> books{book};
        const int workers = resolve_workers(workers_override >= 0 ? workers_override : c.workers);
        const std::size_t n_tasks = active.size() * std::size_t(c.trials);
        std::vector<std::vector<Counters>> acc(workers, std::vector<Counters>(n_cells));
        std::atomic<std::size_t> done{0};
        parallel_for(n_tasks, workers, [&](std::size_t task, int w) {
            const std::size_t id = active[task / c.trials], t = task % c.trials;
            std::vector<Counters> one(1);
            run_trial(c, setups[id], combos, books, trial_seeds(c.seed, id, t), one);
            acc[w][id].add(one[0]);
            const std::size_t d = ++done;
            if (progress)
                progress(d, n_tasks);
        });

        CoverageTable out;
        out.variant = combos[0].label;
        out.seed = c.seed;
        out.config_hash = fnv1a(config_fingerprint(c));
        for (std::size_t id = 0; id < n_cells; ++id)
        {
            auto &cell = cells[id];
            if (cell.skipped)
                continue;
            Counters tot;
            for (int w = 0; w < workers; ++w)
                tot.add(acc[w][id]);
            cell.symbols = tot.symbols;
            cell.symbol_errors = tot.symbol_errors;
            cell.ser = tot.symbols ? double(tot.symbol_errors) / double(tot.symbols) : 0.0;
            cell.log10_ser = std::log10(std::max(cell.ser, 0.5 / double(std::max<std::uint64_t>(tot.symbols, 1))));
        }
        out.cells = std::move(cells);
        return out;
    }

    // ---- analytic curves ---------------------------------------------------

    struct AnalyticRow
    {
        double gamma_db = 0.0;       // as configured
        double gamma_model_db = 0.0;
        std::string receiver;
        Modulation modulation = Modulation::BPSK;
        double p_e = 0.5;
        std::string threshold_case;
    };

    // Closed-form error probabilities over the configured gamma_db sweep
    inline std::vector<AnalyticRow> analytic_curves(const ExperimentConfig &c)
    {
        require(c.sweep.axis == SweepAxis::GammaDb, "analytic curves sweep gamma_db");
        std::vector<AnalyticRow> rows;
        const ChannelState chan = make_channel(c.scenario.spec());
        for (auto m : c.modulations)
            for (double gdb : c.sweep.values)
            {
                const double gm_db = model_gamma_db(gdb, c.snr_reference, chan);
                const double g = db_to_linear(gm_db);
                const auto pe = coherent_pe(chan, g, chip_x0(m), chip_x1(m));
                rows.push_back({gdb, gm_db, "coherent_known_phase", m, pe.p_e, std::string(to_string(pe.kind))});
                if (m == Modulation::OOK)
                {
                    const auto nc = noncoherent_pe(g * chan.eta2 * chan.eta2);
                    rows.push_back({gdb, gm_db, "noncoherent_energy", m, nc.p_e, ""});
                }
            }
        return rows;
    }

    struct CaseCell
    {
        double x = 0.0, y = 0.0;
        bool skipped = false;
        ThresholdCase bpsk = ThresholdCase::Degenerate;
        ThresholdCase ook = ThresholdCase::Degenerate;
        double eta2_sq_db = 0.0;
    };

    // Threshold case labels over the configured grid at the configured gamma
    inline std::vector<CaseCell> case_map(const ExperimentConfig &c)
    {
        std::vector<CaseCell> out;
        const GridSpec &g = c.grid;
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
            {
                CaseCell cell;
                cell.x = grid_coord(g.x_min, g.x_max, g.nx, ix);
                cell.y = grid_coord(g.y_min, g.y_max, g.ny, iy);
                ScenarioSpec s = c.scenario.spec();
                s.tag_pos = {cell.x, cell.y};
                try
                {
                    const auto geom = build_linear_scenario(s.d01, s.n_r, s.tag_pos, s.axis);
                    bool clear = distance(s.tag_pos, geom.tx_pos) >= g.clearance;
                    for (const auto &p : geom.rx_antennas)
                        clear = clear && distance(s.tag_pos, p) >= g.clearance;
                    if (!clear)
                        throw InvalidArgument("too close");
                    const auto chan = channel_state(raw_gains(geom, s.law), geom);
                    const double gm = db_to_linear(model_gamma_db(c.gamma_db, c.snr_reference, chan));
                    cell.bpsk = coherent_pe(chan, gm, -1, 1).kind;
                    cell.ook = coherent_pe(chan, gm, 0, 1).kind;
                    cell.eta2_sq_db = chan.eta2 > 0 ? linear_to_db(chan.eta2 * chan.eta2)
                                                    : -std::numeric_limits<double>::infinity();
                }
                catch (const InvalidArgument &)
                {
                    cell.skipped = true;
                }
                out.push_back(cell);
            }
        return out;
    }

    // ---- curve helpers -----------------------------------------------------

    // x at which y crosses `target`, by linear interpolation of log10(y) between the first bracketing
    // pair of a curve sampled on ascending x. nullopt when the curve never crosses.
    inline std::optional<double> interpolate_crossing(const std::vector<double> &x, const std::vector<double> &y,
                                                      double target)
    {
        require(x.size() == y.size(), "curve sizes differ");
        const double lt = std::log10(target);
        for (std::size_t i = 1; i < x.size(); ++i)
        {
            if (y[i - 1] >= target && y[i] <= target)
            {
                if (y[i] <= 0.0)
                {
                    if (y[i - 1] == target)
                        return x[i - 1];
                    // zero count at the right end; interpolate linearly in y instead
                    const double f = (y[i - 1] - target) / (y[i - 1] - y[i]);
                    return x[i - 1] + f * (x[i] - x[i - 1]);
                }
                const double l0 = std::log10(y[i - 1]), l1 = std::log10(y[i]);
                if (l0 == l1)
                    return x[i - 1];
                return x[i - 1] + (lt - l0) / (l1 - l0) * (x[i] - x[i - 1]);
            }
        }
        return std::nullopt;
    }

    // Rows of one variant label in sweep order
    inline std::pair<std::vector<double>, std::vector<double>> curve_of(const ResultTable &t, const std::string &label,
                                                                       bool use_ser = false)
    {
        std::vector<double> x, y;
        for (const auto &r : t.rows)
            if (r.variant == label)
            {
                x.push_back(r.sweep_value);
                y.push_back(use_ser ? r.ser : r.ber);
            }
        return {x, y};
    }
}

#endif
