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

#ifndef AMBC_CONFIG_HPP
#define AMBC_CONFIG_HPP

#include "codec.hpp"
#include "geometry.hpp"
#include "receiver.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ambc
{
    class ConfigError : public std::runtime_error
    {
    public:
        explicit ConfigError(std::vector<std::string> problems)
            : std::runtime_error(join(problems)), problems_(std::move(problems))
        {
        }
        const std::vector<std::string> &problems() const { return problems_; }

    private:
        static std::string join(const std::vector<std::string> &p)
        {
            std::string s = "invalid config:";
            for (const auto &x : p)
                s += "\n  " + x;
            return s;
        }
        std::vector<std::string> problems_;
    };

    struct TagPlacement
    {
        bool polar = true;
        double d11 = 2.0;          // wavelengths from the reference antenna
        double angle = pi / 4.0;   // from the Rx->Tx axis
        Point2 xy{};
    };

    struct ScenarioConfig
    {
        double d01 = 80.0;
        int n_r = 8;
        TagPlacement tag;
        PathLossLaw law = PathLossLaw::FreeSpace;
        ArrayAxis axis = ArrayAxis::NegativeY;

        ScenarioSpec spec() const
        {
            ScenarioSpec s;
            s.d01 = d01;
            s.n_r = n_r;
            s.law = law;
            s.axis = axis;
            s.tag_pos = tag.polar ? tag_from_polar(d01, tag.d11, tag.angle) : tag.xy;
            return s;
        }
    };

    enum class SweepAxis
    {
        GammaDb,
        EffectiveSnrDb, // gamma chosen so that gamma * eta2^2 hits the value
        PreambleLen,
        CodeOrder,
        NumAntennas,
        D11
    };

    inline std::string_view to_string(SweepAxis a)
    {
        switch (a)
        {
        case SweepAxis::GammaDb:
            return "gamma_db";
        case SweepAxis::EffectiveSnrDb:
            return "effective_snr_db";
        case SweepAxis::PreambleLen:
            return "preamble_len";
        case SweepAxis::CodeOrder:
            return "code_order";
        case SweepAxis::NumAntennas:
            return "n_r";
        default:
            return "d11";
        }
    }

    inline SweepAxis parse_sweep_axis(std::string_view s)
    {
        for (auto a : {SweepAxis::GammaDb, SweepAxis::EffectiveSnrDb, SweepAxis::PreambleLen, SweepAxis::CodeOrder,
                       SweepAxis::NumAntennas, SweepAxis::D11})
            if (to_string(a) == s)
                return a;
        throw InvalidArgument("unknown sweep axis '" + std::string(s) + "'");
    }

    struct Sweep
    {
        SweepAxis axis = SweepAxis::GammaDb;
        std::vector<double> values;
    };

    // How gamma_db in the config is read: SNR of the direct path at the reference antenna, or the
    // array-normalized SNR of the channel model (unit-norm a)
    enum class SnrReference
    {
        ReferenceAntenna,
        Array
    };

    struct GridSpec
    {
        double x_min = -50.0, x_max = 50.0;
        int nx = 21;
        double y_min = 0.0, y_max = 30.0;
        int ny = 7;
        double clearance = 0.5; // cells closer than this to Tx/Rx nodes are skipped
    };

    struct ExperimentConfig
    {
        std::string name = "experiment";
        ScenarioConfig scenario;
        std::vector<Modulation> modulations{Modulation::BPSK};
        std::vector<CodeKind> code_kinds{CodeKind::Uncoded};
        int code_order = 1;
        int preamble_len = 64;
        int payload_symbols = 100;
        std::vector<ReceiverVariant> variants{ReceiverVariant::MlLr};
        Sweep sweep{SweepAxis::GammaDb, {28.0}};
        std::optional<Sweep> series;
        double gamma_db = 28.0;
        SnrReference snr_reference = SnrReference::ReferenceAntenna;
        int trials = 10000;
        std::uint64_t seed = 1;
        int workers = 0;
        bool noiseless = false;
        std::string output;
        std::string plot;
        std::string meta;
        ReceiverOptions receiver;
        GridSpec grid;

        void validate() const;
    };

    namespace detail
    {
        using nlohmann::json;

        class ConfigReader
        {
        public:
            std::vector<std::string> problems;

            void check_keys(const json &obj, const std::string &where, const std::set<std::string> &allowed)
            {
                if (!obj.is_object())
                {
                    problems.push_back(where + ": expected a table");
                    return;
                }
                for (auto it = obj.begin(); it != obj.end(); ++it)
                    if (!allowed.count(it.key()))
                        problems.push_back(where + "." + it.key() + ": unknown key");
            }

            template <typename T>
            void get(const json &obj, const char *key, const std::string &where, T &out)
            {
                if (!obj.is_object() || !obj.contains(key))
                    return;
                try
                {
                    out = obj.at(key).get<T>();
                }
                catch (const std::exception &)
                {
                    problems.push_back(where + "." + key + ": wrong type");
                }
            }

            template <typename T, typename Parse>
            void get_enum(const json &obj, const char *key, const std::string &where, T &out, Parse parse)
            {
                std::string s;
                if (!obj.is_object() || !obj.contains(key))
                    return;
                get(obj, key, where, s);
                try
                {
                    out = parse(s);
                }
                catch (const std::exception &e)
                {
                    problems.push_back(where + "." + key + ": " + e.what());
                }
            }

            // A single string or a list of strings
            template <typename T, typename Parse>
            void get_enum_list(const json &obj, const char *key, const std::string &where, std::vector<T> &out,
                               Parse parse)
            {
                if (!obj.is_object() || !obj.contains(key))
                    return;
                const json &v = obj.at(key);
                std::vector<std::string> names;
                if (v.is_string())
                    names.push_back(v.get<std::string>());
                else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json &e) { return e.is_string(); }))
                    names = v.get<std::vector<std::string>>();
                else
                {
                    problems.push_back(where + "." + key + ": expected a string or list of strings");
                    return;
                }
                std::vector<T> parsed;
                for (const auto &n : names)
                {
                    try
                    {
                        parsed.push_back(parse(n));
                    }
                    catch (const std::exception &e)
                    {
                        problems.push_back(where + "." + key + ": " + e.what());
                    }
                }
                out = parsed;
            }

            void get_sweep(const json &obj, const std::string &where, Sweep &out)
            {
                check_keys(obj, where, {"axis", "values", "start", "stop", "step"});
                get_enum(obj, "axis", where, out.axis, parse_sweep_axis);
                if (obj.contains("values"))
                {
                    get(obj, "values", where, out.values);
                    if (obj.contains("start") || obj.contains("stop") || obj.contains("step"))
                        problems.push_back(where + ": give either values or start/stop/step");
                }
                else if (obj.contains("start") || obj.contains("stop") || obj.contains("step"))
                {
                    double start = 0, stop = 0, step = 0;
                    get(obj, "start", where, start);
                    get(obj, "stop", where, stop);
                    get(obj, "step", where, step);
                    if (!(step > 0.0) || stop < start)
                        problems.push_back(where + ": need step > 0 and stop >= start");
                    else
                    {
                        out.values.clear();
                        const int n = int(std::floor((stop - start) / step + 1e-9)) + 1;
                        for (int i = 0; i < n; ++i)
                            out.values.push_back(start + step * i);
                    }
                }
            }
        };

        inline PathLossLaw parse_law(const std::string &s)
        {
            if (s == "free_space")
                return PathLossLaw::FreeSpace;
            if (s == "squared")
                return PathLossLaw::Squared;
            throw InvalidArgument("unknown path_loss '" + s + "' (free_space | squared)");
        }

        inline ArrayAxis parse_axis(const std::string &s)
        {
            if (s == "-y")
                return ArrayAxis::NegativeY;
            if (s == "+y")
                return ArrayAxis::PositiveY;
            throw InvalidArgument("unknown array_axis '" + s + "' (-y | +y)");
        }

        inline SnrReference parse_snr_reference(const std::string &s)
        {
            if (s == "reference_antenna")
                return SnrReference::ReferenceAntenna;
            if (s == "array")
                return SnrReference::Array;
            throw InvalidArgument("unknown snr_reference '" + s + "' (reference_antenna | array)");
        }

        inline InterceptPolicy parse_intercept(const std::string &s)
        {
            if (s == "auto")
                return InterceptPolicy::Auto;
            if (s == "always")
                return InterceptPolicy::Always;
            if (s == "never")
                return InterceptPolicy::Never;
            throw InvalidArgument("unknown lr_intercept '" + s + "' (auto | always | never)");
        }
    }

    inline void ExperimentConfig::validate() const
    {
        std::vector<std::string> p;
        if (trials < 1)
            p.push_back("trials: must be >= 1");
        if (sweep.values.empty())
            p.push_back("sweep.values: must be non-empty");
        if (series && series->values.empty())
            p.push_back("series.values: must be non-empty");
        if (modulations.empty())
            p.push_back("modulation: must be non-empty");
        if (code_kinds.empty())
            p.push_back("code.kind: must be non-empty");
        if (variants.empty())
            p.push_back("variants: must be non-empty");
        if (preamble_len < 1)
            p.push_back("preamble_len: must be >= 1");
        if (payload_symbols < 1)
            p.push_back("payload_symbols: must be >= 1");
        if (scenario.n_r < 2)
            p.push_back("scenario.n_r: must be >= 2");
        if (!(scenario.d01 > 0.0))
            p.push_back("scenario.d01: must be > 0");
        if (scenario.tag.polar && !(scenario.tag.d11 > 0.0))
            p.push_back("scenario.tag.d11: must be > 0");
        for (auto k : code_kinds)
            if (k != CodeKind::Uncoded && (code_order < 1 || code_order > 10))
                p.push_back("code.r: must be in [1, 10]");
        if (workers < 0)
            p.push_back("workers: must be >= 0");
        bool any_supported = false;
        for (auto v : variants)
            for (auto m : modulations)
                any_supported |= variant_supports(v, m);
        if (!variants.empty() && !modulations.empty() && !any_supported)
            p.push_back("variants: no variant supports the configured modulation(s)");
        for (const Sweep *s : {&sweep, series ? &*series : nullptr})
        {
            if (!s)
                continue;
            const std::string where = s == &sweep ? "sweep" : "series";
            for (double v : s->values)
            {
                if (!std::isfinite(v))
                    p.push_back(where + ".values: must be finite");
                const bool integral = v == std::floor(v);
                switch (s->axis)
                {
                case SweepAxis::PreambleLen:
                    if (!integral || v < 1)
                        p.push_back(where + ".values: preamble_len must be an integer >= 1");
                    break;
                case SweepAxis::CodeOrder:
                    if (!integral || v < 1 || v > 10)
                        p.push_back(where + ".values: code_order must be an integer in [1, 10]");
                    break;
                case SweepAxis::NumAntennas:
                    if (!integral || v < 2)
                        p.push_back(where + ".values: n_r must be an integer >= 2");
                    break;
                case SweepAxis::D11:
                    if (!(v > 0) || !scenario.tag.polar)
                        p.push_back(where + ".values: d11 sweeps need d11 > 0 and polar tag placement");
                    break;
                default:
                    break;
                }
            }
        }
        if (grid.nx < 1 || grid.ny < 1 || grid.x_max < grid.x_min || grid.y_max < grid.y_min)
            p.push_back("grid: need nx, ny >= 1 and max >= min");
        if (!p.empty())
            throw ConfigError(p);
    }

    inline ExperimentConfig parse_config(const nlohmann::json &j)
    {
        detail::ConfigReader rd;
        ExperimentConfig c;
        rd.check_keys(j, "config",
                      {"name", "scenario", "modulation", "code", "preamble_len", "payload_symbols", "variants",
                       "sweep", "series", "gamma_db", "snr_reference", "trials", "seed", "workers", "noiseless",
                       "output", "plot", "meta", "receiver", "grid"});
        if (!rd.problems.empty())
            throw ConfigError(rd.problems);

        rd.get(j, "name", "config", c.name);
        if (j.contains("scenario"))
        {
            const auto &s = j.at("scenario");
            rd.check_keys(s, "scenario", {"d01", "n_r", "tag", "path_loss", "array_axis"});
            rd.get(s, "d01", "scenario", c.scenario.d01);
            rd.get(s, "n_r", "scenario", c.scenario.n_r);
            rd.get_enum(s, "path_loss", "scenario", c.scenario.law, detail::parse_law);
            rd.get_enum(s, "array_axis", "scenario", c.scenario.axis, detail::parse_axis);
            if (s.is_object() && s.contains("tag"))
            {
                const auto &t = s.at("tag");
                rd.check_keys(t, "scenario.tag", {"d11", "angle_deg", "x", "y"});
                const bool has_xy = t.is_object() && (t.contains("x") || t.contains("y"));
                const bool has_polar = t.is_object() && (t.contains("d11") || t.contains("angle_deg"));
                if (has_xy && has_polar)
                    rd.problems.push_back("scenario.tag: give either d11/angle_deg or x/y");
                if (has_xy)
                {
                    c.scenario.tag.polar = false;
                    if (!t.contains("x") || !t.contains("y"))
                        rd.problems.push_back("scenario.tag: x and y are both required");
                    rd.get(t, "x", "scenario.tag", c.scenario.tag.xy.x);
                    rd.get(t, "y", "scenario.tag", c.scenario.tag.xy.y);
                }
                else
                {
                    double deg = 45.0;
                    rd.get(t, "d11", "scenario.tag", c.scenario.tag.d11);
                    rd.get(t, "angle_deg", "scenario.tag", deg);
                    c.scenario.tag.angle = deg * pi / 180.0;
                }
            }
        }
        rd.get_enum_list(j, "modulation", "config", c.modulations, parse_modulation);
        if (j.contains("code"))
        {
            const auto &cd = j.at("code");
            rd.check_keys(cd, "code", {"kind", "r"});
            rd.get_enum_list(cd, "kind", "code", c.code_kinds, parse_code_kind);
            rd.get(cd, "r", "code", c.code_order);
        }
        rd.get(j, "preamble_len", "config", c.preamble_len);
        rd.get(j, "payload_symbols", "config", c.payload_symbols);
        rd.get_enum_list(j, "variants", "config", c.variants, parse_variant);
        if (j.contains("sweep"))
            rd.get_sweep(j.at("sweep"), "sweep", c.sweep);
        if (j.contains("series"))
        {
            Sweep s;
            rd.get_sweep(j.at("series"), "series", s);
            c.series = s;
        }
        rd.get(j, "gamma_db", "config", c.gamma_db);
        rd.get_enum(j, "snr_reference", "config", c.snr_reference, detail::parse_snr_reference);
        rd.get(j, "trials", "config", c.trials);
        rd.get(j, "seed", "config", c.seed);
        rd.get(j, "workers", "config", c.workers);
        rd.get(j, "noiseless", "config", c.noiseless);
        rd.get(j, "output", "config", c.output);
        rd.get(j, "plot", "config", c.plot);
        rd.get(j, "meta", "config", c.meta);
        if (j.contains("receiver"))
        {
            const auto &r = j.at("receiver");
            rd.check_keys(r, "receiver", {"knn_k", "lr_intercept", "lr_l2", "lr_max_iterations"});
            rd.get(r, "knn_k", "receiver", c.receiver.classifier.k);
            rd.get(r, "lr_l2", "receiver", c.receiver.classifier.l2);
            rd.get(r, "lr_max_iterations", "receiver", c.receiver.classifier.max_iterations);
            rd.get_enum(r, "lr_intercept", "receiver", c.receiver.intercept, detail::parse_intercept);
            if (c.receiver.classifier.k < 1)
                rd.problems.push_back("receiver.knn_k: must be >= 1");
        }
        if (j.contains("grid"))
        {
            const auto &g = j.at("grid");
            rd.check_keys(g, "grid", {"x_min", "x_max", "nx", "y_min", "y_max", "ny", "clearance"});
            rd.get(g, "x_min", "grid", c.grid.x_min);
            rd.get(g, "x_max", "grid", c.grid.x_max);
            rd.get(g, "nx", "grid", c.grid.nx);
            rd.get(g, "y_min", "grid", c.grid.y_min);
            rd.get(g, "y_max", "grid", c.grid.y_max);
            rd.get(g, "ny", "grid", c.grid.ny);
            rd.get(g, "clearance", "grid", c.grid.clearance);
        }
        if (!rd.problems.empty())
            throw ConfigError(rd.problems);
        c.validate();
        return c;
    }

    inline ExperimentConfig parse_config_text(const std::string &text)
    {
        nlohmann::json j;
        try
        {
            j = nlohmann::json::parse(text, nullptr, true, true);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw ConfigError({std::string("parse error: ") + e.what()});
        }
        return parse_config(j);
    }

    inline ExperimentConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError({"cannot open config file '" + path + "'"});
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_config_text(ss.str());
    }

    // 64-bit FNV-1a of the raw text
    inline std::uint64_t fnv1a(std::string_view s)
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char ch : s)
        {
            h ^= ch;
            h *= 0x100000001b3ull;
        }
        return h;
    }
}

#endif
