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

// ambc command line: BER sweeps, coverage maps, closed-form curves, single-frame demo, self test.

#include <ambc/output.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace ambc;

namespace
{
    struct Overrides
    {
        std::string config;
        std::optional<std::uint64_t> seed;
        std::optional<int> trials;
        std::optional<int> workers;
        std::string out;
        std::string plot;
        std::string meta;
        std::vector<std::string> variants;
        bool quiet = false;
    };

    ExperimentConfig load(const Overrides &o)
    {
        if (o.config.empty())
            throw ConfigError({"--config: required"});
        ExperimentConfig c = load_config(o.config);
        if (o.seed)
            c.seed = *o.seed;
        if (o.trials)
            c.trials = *o.trials;
        if (o.workers)
            c.workers = *o.workers;
        if (!o.variants.empty())
        {
            std::vector<std::string> bad;
            c.variants.clear();
            for (const auto &v : o.variants)
            {
                try
                {
                    c.variants.push_back(parse_variant(v));
                }
                catch (const InvalidArgument &e)
                {
                    bad.push_back(std::string("--variants: ") + e.what());
                }
            }
            if (!bad.empty())
                throw ConfigError(bad);
        }
        if (!o.out.empty())
            c.output = o.out;
        if (!o.plot.empty())
            c.plot = o.plot;
        if (!o.meta.empty())
            c.meta = o.meta;
        c.validate();
        return c;
    }

    ProgressFn progress_bar(bool quiet)
    {
        if (quiet)
            return {};
        return [last = std::size_t(0)](std::size_t done, std::size_t total) mutable {
            const std::size_t pct = total ? 100 * done / total : 100;
            if (pct != last || done == total)
            {
                last = pct;
                std::cerr << "\r  " << pct << "% (" << done << "/" << total << ")" << (done == total ? "\n" : "")
                          << std::flush;
            }
        };
    }

    // Writes to `path`, or stdout when empty
    template <class F>
    void emit(const std::string &path, F &&write)
    {
        if (path.empty())
        {
            write(std::cout);
            std::cout.flush();
            return;
        }
        auto os = open_output(path);
        write(os);
        finish_output(os, path);
        std::cerr << "wrote " << path << "\n";
    }

    int cmd_ber_sweep(const Overrides &o)
    {
        const auto c = load(o);
        const auto t0 = std::chrono::steady_clock::now();
        const auto t = run_experiment(c, -1, progress_bar(o.quiet));
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        require(!t.rows.empty(), "result table is empty");
        emit(c.output, [&](std::ostream &os) { write_result_csv(os, t); });
        if (!c.meta.empty())
            write_meta_csv(c.meta, t);
        if (!c.plot.empty())
            write_svg_plot(c.plot, t);
        std::cerr << t.rows.size() << " rows, " << c.trials << " trials/point, " << dt << " s\n";
        return 0;
    }

    int cmd_coverage(const Overrides &o)
    {
        const auto c = load(o);
        const auto t = run_coverage_map(c, -1, progress_bar(o.quiet));
        emit(c.output, [&](std::ostream &os) { write_coverage_csv(os, t); });
        return 0;
    }

    int cmd_analytic(const Overrides &o, bool cases)
    {
        const auto c = load(o);
        if (cases)
            emit(c.output, [&](std::ostream &os) { write_case_map_csv(os, case_map(c)); });
        else
            emit(c.output, [&](std::ostream &os) { write_analytic_csv(os, analytic_curves(c)); });
        return 0;
    }

    std::string chip_string(const std::vector<std::int8_t> &chips, std::size_t from, std::size_t n)
    {
        std::string s;
        for (std::size_t i = from; i < from + n && i < chips.size(); ++i)
            s += chips[i] == 1 ? '+' : chips[i] == -1 ? '-' : '0';
        return s;
    }

    std::string bit_string(const std::vector<std::uint8_t> &bits)
    {
        std::string s;
        for (auto b : bits)
            s += char('0' + b);
        return s;
    }

    // One frame at the first sweep point, every configured receiver
    int cmd_frame_demo(const Overrides &o)
    {
        const auto c = load(o);
        const PointSetup p = resolve_point(c, c.sweep.values.front(),
                                           c.series ? std::optional<double>(c.series->values.front()) : std::nullopt);
        const auto info = point_info(p);
        std::cout << "gamma_db=" << info.gamma_ref_db << " (model " << info.gamma_model_db << ")"
                  << " delta_db=" << info.delta_db << " eta2_sq_db=" << info.eta2_sq_db << " phi=" << info.phi
                  << " n_r=" << info.n_r << " L=" << p.preamble_len << "\n";
        const TrialSeeds seeds = trial_seeds(c.seed, 0, 0);
        for (auto m : c.modulations)
            for (auto kind : c.code_kinds)
            {
                const CodeSpec code = kind == CodeKind::Uncoded ? CodeSpec::uncoded() : CodeSpec{kind, p.code_order};
                const Codebook book(code);
                const auto bits = random_bits(seeds.bits, std::size_t(c.payload_symbols) * code.k());
                const Frame frame = build_frame(bits, p.preamble_len, code, m);
                const SampleBlock block = synthesize_block(p.chan, frame, p.gamma_model_db, seeds.block, c.noiseless);
                FrameDemodulator demod(block, frame, p.chan, db_to_linear(p.gamma_model_db), book, c.receiver);
                const std::size_t payload = std::size_t(frame.payload_symbols) * frame.n();
                std::cout << "\n" << to_string(m) << " " << to_string(kind);
                if (kind != CodeKind::Uncoded)
                    std::cout << " r=" << code.r;
                std::cout << "  n=" << code.n() << " k=" << code.k() << " frame=" << frame.length() << " chips\n";
                std::cout << "  preamble  " << chip_string(frame.chips, 0, std::size_t(frame.payload_offset()))
                          << "\n";
                std::cout << "  payload   " << chip_string(frame.chips, std::size_t(frame.payload_offset()), payload)
                          << "\n";
                std::cout << "  bits      " << bit_string(frame.source_bits) << "\n";
                for (auto v : c.variants)
                {
                    if (!variant_supports(v, m))
                        continue;
                    const auto out = demod.run(v);
                    std::cout << "  " << to_string(v) << "\n";
                    std::cout << "    chips   " << chip_string(out.chip_decisions, 0, out.chip_decisions.size())
                              << "  (" << out.chip_errors << " wrong)\n";
                    std::cout << "    bits    " << bit_string(out.bits) << "  (" << out.bit_errors << "/"
                              << out.n_bits << " wrong)\n";
                }
            }
        return 0;
    }

    // Quick invariant checks; prints one line per check
    int cmd_selftest()
    {
        int failed = 0;
        auto check = [&](const std::string &name, bool ok) {
            std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
            failed += !ok;
        };

        for (auto kind : {CodeKind::Hadamard, CodeKind::Simplex})
            for (int r = 1; r <= 4; ++r)
            {
                const Codebook book({kind, r});
                int dmin = book.code().n();
                for (std::size_t i = 0; i < book.size(); ++i)
                    for (std::size_t j = i + 1; j < book.size(); ++j)
                    {
                        int d = 0;
                        for (int b = 0; b < book.code().n(); ++b)
                            d += book.word(i)[b] != book.word(j)[b];
                        dmin = std::min(dmin, d);
                    }
                check(std::string(to_string(kind)) + " r=" + std::to_string(r) + " min distance " +
                          std::to_string(dmin),
                      dmin == (1 << r));
            }

        ScenarioConfig sc;
        const ChannelState chan = make_channel(sc.spec());
        check("unit directions", std::abs(chan.a.norm() - 1) < 1e-12 && std::abs(chan.c.norm() - 1) < 1e-12 &&
                                     std::abs(chan.a.dot(chan.c)) < 1e-12);
        check("|eta1|^2 + eta2^2 = delta", std::abs(std::norm(chan.eta1) + chan.eta2 * chan.eta2 - chan.delta) < 1e-12 * chan.delta);

        const double g = db_to_linear(30.0);
        bool eig_ok = true;
        for (double x : {-1.0, 0.0, 1.0})
        {
            const auto e = conditional_eigenvalues(chan, g, x);
            const auto parts = eigen_parts(chan, g, x);
            eig_ok = eig_ok && e.lambda1 < 0 && e.lambda2 > 0 &&
                     std::abs(e.lambda1 + e.lambda2 - 2 * parts.epsilon) < 1e-9 * e.lambda2 &&
                     std::abs(e.lambda1 * e.lambda2 + parts.A) < 1e-9 * std::abs(parts.A);
            const Ald law(e.lambda1, e.lambda2);
            eig_ok = eig_ok && std::abs(law.cdf(0.0) + e.lambda1 / (e.lambda2 - e.lambda1)) < 1e-12;
        }
        check("eigenvalue sum/product and ALD cdf(0)", eig_ok);

        const auto nc = noncoherent_pe(0.0);
        check("energy detector p_e(0) = 0.5", std::abs(nc.p_e - 0.5) < 1e-12);
        const double pe_lo = coherent_pe(chan, db_to_linear(10.0), -1, 1).p_e;
        const double pe_hi = coherent_pe(chan, db_to_linear(40.0), -1, 1).p_e;
        check("coherent p_e decreasing in gamma", pe_hi < pe_lo && pe_lo <= 0.5);

        ExperimentConfig c;
        c.modulations = {Modulation::BPSK, Modulation::OOK};
        c.code_kinds = {CodeKind::Uncoded, CodeKind::Hadamard};
        c.code_order = 2;
        c.variants = {ReceiverVariant::MlLr, ReceiverVariant::GenieCoherent, ReceiverVariant::PhaseIgnoring,
                      ReceiverVariant::NoncoherentEnergy};
        c.preamble_len = 16;
        c.payload_symbols = 16;
        c.trials = 1;
        c.noiseless = true;
        std::uint64_t genie_errors = 0;
        for (const auto &row : run_experiment(c, 1).rows)
            if (row.variant.rfind("genie_coherent", 0) == 0 || row.variant.rfind("noncoherent_energy", 0) == 0)
                genie_errors += row.bit_errors;
        check("noiseless frames decode without error", genie_errors == 0);

        c.noiseless = false;
        c.trials = 12;
        const std::string a = result_csv_string(run_experiment(c, 1));
        const std::string b = result_csv_string(run_experiment(c, 3));
        check("CSV identical across worker counts", a == b);
        std::istringstream is(a);
        check("CSV round trip", parse_result_csv(is) == run_experiment(c, 2).rows);

        std::cout << (failed ? "selftest FAILED (" + std::to_string(failed) + ")" : "selftest passed") << "\n";
        return failed ? 1 : 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"ambient backscatter link simulator"};
    app.set_version_flag("--version", library_version);
    app.require_subcommand(1);

    Overrides o;
    bool case_map_flag = false;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", o.config, "JSON experiment config")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", o.seed, "master seed");
        sub->add_option("--trials", o.trials, "trials per point");
        sub->add_option("--workers", o.workers, "worker threads (0: all cores)");
        sub->add_option("--out", o.out, "output CSV (default: stdout)");
        sub->add_flag("--quiet,-q", o.quiet, "no progress output");
    };

    auto *sweep = app.add_subcommand("ber-sweep", "BER/SER curves over the configured sweep");
    add_common(sweep);
    sweep->add_option("--variants", o.variants, "receiver variants, overrides the config")->delimiter(',');
    sweep->add_option("--plot", o.plot, "SVG plot of BER");
    sweep->add_option("--meta", o.meta, "per-point operating conditions CSV");

    auto *cov = app.add_subcommand("coverage", "SER over a grid of tag positions");
    add_common(cov);
    cov->add_option("--variants", o.variants, "receiver variant (first usable one is mapped)")->delimiter(',');

    auto *ana = app.add_subcommand("analytic", "closed-form error probability curves");
    add_common(ana);
    ana->add_flag("--case-map", case_map_flag, "threshold case labels over the config grid instead");

    auto *demo = app.add_subcommand("frame-demo", "one frame's chips and decoded bits");
    add_common(demo);
    demo->add_option("--variants", o.variants, "receiver variants, overrides the config")->delimiter(',');

    auto *self = app.add_subcommand("selftest", "run the built-in invariant checks");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e);
    }

    try
    {
        if (*sweep)
            return cmd_ber_sweep(o);
        if (*cov)
            return cmd_coverage(o);
        if (*ana)
            return cmd_analytic(o, case_map_flag);
        if (*demo)
            return cmd_frame_demo(o);
        if (*self)
            return cmd_selftest();
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error:\n";
        for (const auto &p : e.problems())
            std::cerr << "  " << p << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
