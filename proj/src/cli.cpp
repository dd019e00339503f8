/*
   Copyright 2026 The memphase Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "memphase/cli.hpp"

#include "memphase/codes.hpp"
#include "memphase/errors.hpp"
#include "memphase/montecarlo.hpp"
#include "memphase/parallel.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

namespace memphase::cli {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::string where(std::string_view origin, const ConfigEntry& entry, std::string_view key)
{
    std::ostringstream out;
    if (entry.line == 0)
        out << "command-line override";
    else
        out << origin << " line " << entry.line;
    out << ", field '" << key << "'";
    return out.str();
}

class FieldReader {
public:
    FieldReader(const ConfigEntries& entries, std::string_view origin) : entries_(entries), origin_(origin) {}

    const ConfigEntry* find(const std::string& key)
    {
        used_.insert(key);
        const auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : &it->second;
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what)
    {
        const ConfigEntry* e = find(key);
        throw ConfigError(where(origin_, e ? *e : ConfigEntry{}, key) + ": " + what);
    }

    double number(const std::string& key, double fallback)
    {
        const ConfigEntry* e = find(key);
        if (!e)
            return fallback;
        double v = 0.0;
        const char* begin = e->value.data();
        const char* end = begin + e->value.size();
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr != end || !std::isfinite(v))
            fail(key, "expected a finite number, got '" + e->value + "'");
        return v;
    }

    std::uint64_t integer(const std::string& key, std::uint64_t fallback)
    {
        const ConfigEntry* e = find(key);
        if (!e)
            return fallback;
        std::uint64_t v = 0;
        const char* begin = e->value.data();
        const char* end = begin + e->value.size();
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr != end)
            fail(key, "expected a non-negative integer, got '" + e->value + "'");
        return v;
    }

    std::string text(const std::string& key, const std::string& fallback)
    {
        const ConfigEntry* e = find(key);
        return e ? e->value : fallback;
    }

    bool has(const std::string& key) { return find(key) != nullptr; }

    void reject_unknown()
    {
        for (const auto& [key, entry] : entries_)
            if (!used_.contains(key))
                throw ConfigError(where(origin_, entry, key) + ": unknown key");
    }

private:
    const ConfigEntries& entries_;
    std::string_view origin_;
    std::set<std::string> used_;
};

std::vector<CoherenceLabel> parse_labels(FieldReader& reader, std::size_t uses)
{
    std::vector<CoherenceLabel> labels;
    const std::string spec = reader.text("labels", "");
    std::stringstream items(spec);
    std::string item;
    while (std::getline(items, item, ',')) {
        item = trim(item);
        if (item.empty())
            continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            reader.fail("labels", "expected j:l bit-string pairs, got '" + item + "'");
        try {
            auto label = CoherenceLabel::parse(trim(item.substr(0, colon)), trim(item.substr(colon + 1)));
            if (label.length() != uses)
                reader.fail("labels", "label '" + item + "' does not have " + std::to_string(uses) + " bits");
            labels.push_back(label);
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            reader.fail("labels", e.what());
        }
    }
    return labels;
}

void write_metadata(std::ostream& out, const RunConfig& config)
{
    out << "# memphase " << kVersion << "\n";
    out << "# command: " << command_name(config.command) << "\n";
    out << "# config_hash: " << std::hex << std::setw(16) << std::setfill('0') << config.hash << std::dec
        << std::setfill(' ') << "\n";
    out << "# seed: " << config.mc.seed << "\n";
}

std::string feasibility_tag(const MuFeasibility& f)
{
    return f.feasible() ? "feasible" : "infeasible";
}

void warn_if_infeasible(std::ostream& warnings, double mu1, double mu2)
{
    const MuFeasibility f = check_mu_feasible(mu1, mu2);
    if (!f.feasible())
        warnings << "warning: (mu1, mu2) = (" << mu1 << ", " << mu2 << ") is infeasible: " << f.message()
                 << "\n";
}

} // namespace

Command parse_command(std::string_view name)
{
    if (name == "decay")
        return Command::Decay;
    if (name == "fig2")
        return Command::Fig2;
    if (name == "fig3")
        return Command::Fig3;
    if (name == "validate")
        return Command::Validate;
    throw ConfigError("unknown command '" + std::string(name) + "'");
}

std::string_view command_name(Command command)
{
    switch (command) {
    case Command::Decay:
        return "decay";
    case Command::Fig2:
        return "fig2";
    case Command::Fig3:
        return "fig3";
    case Command::Validate:
        return "validate";
    }
    return "unknown";
}

ConfigEntries parse_entries(std::string_view text, std::string_view origin)
{
    ConfigEntries entries;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const std::string content = trim(line);
        if (content.empty())
            continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << origin << " line " << line_no << ": expected 'key = value', got '" << content << "'";
            throw ConfigError(msg.str());
        }
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        if (key.empty() || value.empty()) {
            std::ostringstream msg;
            msg << origin << " line " << line_no << ": empty key or value";
            throw ConfigError(msg.str());
        }
        if (const auto it = entries.find(key); it != entries.end()) {
            std::ostringstream msg;
            msg << origin << " line " << line_no << ", field '" << key << "': already set on line "
                << it->second.line;
            throw ConfigError(msg.str());
        }
        entries.emplace(key, ConfigEntry{value, line_no});
    }
    return entries;
}

std::uint64_t config_hash(const ConfigEntries& entries)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
    };
    for (const auto& [key, entry] : entries) {
        feed(key);
        feed("=");
        feed(entry.value);
        feed("\n");
    }
    return h;
}

RunConfig build_config(Command command, const ConfigEntries& entries, std::string_view origin)
{
    FieldReader reader(entries, origin);
    RunConfig config;
    config.command = command;
    config.hash = config_hash(entries);

    const std::string kind = reader.text("spectrum", "lorentzian");
    if (kind == "white") {
        config.spectrum = WhiteSpectrum{reader.number("level", 1.0)};
    } else if (kind == "lorentzian") {
        config.spectrum = LorentzianSpectrum{reader.number("variance", 1.0), reader.number("rate", 1.0)};
    } else if (kind == "one_over_f") {
        if (!reader.has("omega_min") || !reader.has("omega_max"))
            reader.fail("spectrum", "one_over_f needs explicit omega_min and omega_max");
        config.spectrum = OneOverFSpectrum{reader.number("amplitude", 1.0), reader.number("omega_min", 0.0),
                                           reader.number("omega_max", 0.0)};
    } else {
        reader.fail("spectrum", "expected white, lorentzian or one_over_f, got '" + kind + "'");
    }
    try {
        validate(config.spectrum);
    } catch (const DomainError& e) {
        const std::string what = e.what();
        std::string field = "spectrum";
        for (const char* key : {"level", "variance", "rate", "amplitude"})
            if (what.find(key) != std::string::npos)
                field = key;
        if (what.find("cutoffs") != std::string::npos)
            field = "omega_min";
        reader.fail(field, what);
    }

    config.params.coupling = reader.number("coupling", 1.0);
    config.params.transit_time = reader.number("transit_time", 1.0);
    config.params.spacing = reader.number("spacing", config.params.transit_time);
    config.params.uses = reader.integer("uses", 3);
    config.params.first_entry = reader.number("first_entry", 0.0);
    try {
        config.params.validate();
    } catch (const DomainError& e) {
        // The message starts with the offending field name.
        const std::string what = e.what();
        std::string field = "transit_time";
        for (const char* key : {"transit_time", "spacing", "coupling", "first_entry"})
            if (what.rfind(key, 0) == 0)
                field = key;
        if (what.find("channel use") != std::string::npos)
            field = "uses";
        reader.fail(field, what);
    }
    if (config.params.uses > 5 && command == Command::Decay && !reader.has("labels"))
        reader.fail("labels", "explicit labels are required for more than 5 uses");
    config.labels = parse_labels(reader, config.params.uses);

    auto& sweep = config.sweep;
    sweep.epsilon = reader.number("epsilon", sweep.epsilon);
    if (!(sweep.epsilon > 0.0 && sweep.epsilon < 0.5))
        reader.fail("epsilon", "must lie in (0, 0.5)");
    sweep.mu1_step = reader.number("mu1_step", sweep.mu1_step);
    if (!(sweep.mu1_step > 0.0 && sweep.mu1_step <= 1.0))
        reader.fail("mu1_step", "must lie in (0, 1]");
    sweep.eps_min = reader.number("eps_min", sweep.eps_min);
    sweep.eps_max = reader.number("eps_max", sweep.eps_max);
    sweep.eps_points = reader.integer("eps_points", sweep.eps_points);
    if (!(sweep.eps_min > 0.0 && sweep.eps_min < 0.5))
        reader.fail("eps_min", "must lie in (0, 0.5)");
    if (!(sweep.eps_max >= sweep.eps_min && sweep.eps_max < 0.5))
        reader.fail("eps_max", "must lie in [eps_min, 0.5)");
    if (sweep.eps_points < 1 || (sweep.eps_points == 1 && sweep.eps_max != sweep.eps_min))
        reader.fail("eps_points", "the epsilon range must contain at least one point");

    auto& mc = config.mc;
    mc.seed = reader.integer("seed", mc.seed);
    mc.samples = reader.integer("samples", mc.samples);
    if (mc.samples < 40)
        reader.fail("samples", "at least 40 samples are needed for batch statistics");
    if (reader.has("dt")) {
        mc.dt = reader.number("dt", 0.0);
        if (!(*mc.dt > 0.0 && *mc.dt <= config.params.transit_time / 50.0))
            reader.fail("dt", "must lie in (0, transit_time / 50]");
    }
    mc.epsilon = reader.number("mc_epsilon", mc.epsilon);
    if (!(mc.epsilon > 0.0 && mc.epsilon < 0.5))
        reader.fail("mc_epsilon", "must lie in (0, 0.5)");
    mc.mu1 = reader.number("mu1", mc.mu1);
    mc.mu2 = reader.number("mu2", mc.mu2);
    // Infeasible pairs are only warned about; values outside [-1, 1] are not
    // correlation coefficients at all.
    if (!(std::abs(mc.mu1) <= 1.0))
        reader.fail("mu1", "must lie in [-1, 1]");
    if (!(std::abs(mc.mu2) <= 1.0))
        reader.fail("mu2", "must lie in [-1, 1]");

    config.output_path = reader.text("out", "");
    reader.reject_unknown();
    return config;
}

void cmd_decay(const RunConfig& config, std::ostream& out, std::ostream& warnings)
{
    const PhaseCovariance cov = covariance_from_spectrum(config.spectrum, config.params);
    out << std::setprecision(15);
    write_metadata(out, config);
    out << "# spectrum: " << describe(config.spectrum) << "\n";
    out << "# eta2: " << cov.eta2() << "\n";
    out << "# g: " << cov.damping() << "\n";
    out << "# epsilon: " << epsilon_from_g(cov.damping()) << "\n";
    if (cov.uses() >= 3) {
        const MuFeasibility f = check_mu_feasible(cov.mu(1), cov.mu(2));
        out << "# mu1_mu2: " << feasibility_tag(f) << "\n";
        warn_if_infeasible(warnings, cov.mu(1), cov.mu(2));
    }
    out << "m,mu_m\n";
    for (std::size_t m = 0; m < cov.uses(); ++m)
        out << m << "," << cov.mu(m) << "\n";

    std::vector<CoherenceLabel> labels = config.labels;
    if (labels.empty()) {
        const auto n = static_cast<std::uint32_t>(cov.uses());
        for (std::uint32_t j = 0; j < (1u << n); ++j)
            for (std::uint32_t l = 0; l < (1u << n); ++l)
                labels.emplace_back(j, l, n);
    }
    out << "# labels\n";
    out << "j,l,exponent,D\n";
    for (const auto& label : labels)
        out << label.j_string() << "," << label.l_string() << "," << decay_exponent(label, cov) << ","
            << decay_factor(label, cov) << "\n";
}

void cmd_fig2(const RunConfig& config, std::ostream& out, std::ostream& warnings)
{
    const double eps = config.sweep.epsilon;
    const double g = g_from_epsilon(eps);
    const auto steps = static_cast<std::size_t>(std::llround(1.0 / config.sweep.mu1_step));

    struct Row {
        double mu1, mu2_lower, pe_lower, pe_eq, pe_two, pe_memoryless;
        MuFeasibility f_lower, f_eq;
    };
    std::vector<Row> rows(steps + 1);
    run_parallel(rows.size(), [&](std::size_t i) {
        Row& r = rows[i];
        r.mu1 = std::min(1.0, static_cast<double>(i) / static_cast<double>(steps));
        r.mu2_lower = std::max(0.0, 2.0 * r.mu1 * r.mu1 - 1.0);
        const TqcEvaluation lower = evaluate_tqc({g, r.mu1, r.mu2_lower});
        const TqcEvaluation eq = evaluate_tqc({g, r.mu1, r.mu1});
        r.pe_lower = lower.error_probability;
        r.pe_eq = eq.error_probability;
        r.f_lower = lower.feasibility;
        r.f_eq = eq.feasibility;
        r.pe_two = pe_two_qubit(g, r.mu1);
        r.pe_memoryless = 1.0 - fe_tqc_memory(g, 0.0, 0.0);
    });

    out << std::setprecision(15);
    write_metadata(out, config);
    out << "# epsilon: " << eps << "\n";
    out << "mu1,mu2_lower,Pe_tqc_at_mu2_lower,Pe_tqc_at_mu2_eq_mu1,Pe_two_qubit,Pe_single,Pe_tqc_memoryless,"
           "feasible_lower,feasible_eq\n";
    for (const Row& r : rows) {
        out << r.mu1 << "," << r.mu2_lower << "," << r.pe_lower << "," << r.pe_eq << "," << r.pe_two << ","
            << eps << "," << r.pe_memoryless << "," << feasibility_tag(r.f_lower) << ","
            << feasibility_tag(r.f_eq) << "\n";
        warn_if_infeasible(warnings, r.mu1, r.mu2_lower);
        warn_if_infeasible(warnings, r.mu1, r.mu1);
    }
}

void cmd_fig3(const RunConfig& config, std::ostream& out, std::ostream& /*warnings*/)
{
    const auto& s = config.sweep;
    struct Row {
        double eps, memoryless, worst, two_qubit;
    };
    std::vector<Row> rows(s.eps_points);
    const double log_lo = std::log10(s.eps_min);
    const double log_hi = std::log10(s.eps_max);
    run_parallel(rows.size(), [&](std::size_t i) {
        const double t = rows.size() > 1 ? static_cast<double>(i) / static_cast<double>(rows.size() - 1) : 0.0;
        const double eps = std::pow(10.0, log_lo + t * (log_hi - log_lo));
        const double g = g_from_epsilon(eps);
        rows[i] = {eps, 1.0 - fe_tqc_memory(g, 0.0, 0.0), 1.0 - fe_tqc_memory(g, 1.0, 1.0),
                   pe_two_qubit(g, 0.99)};
    });

    out << std::setprecision(15);
    write_metadata(out, config);
    out << "# Pe_tqc_memoryless: mu1=0 mu2=0 " << feasibility_tag(check_mu_feasible(0.0, 0.0)) << "\n";
    out << "# Pe_tqc_worst: mu1=1 mu2=1 " << feasibility_tag(check_mu_feasible(1.0, 1.0)) << "\n";
    out << "# Pe_two_qubit_mu099: mu1=0.99\n";
    out << "epsilon,Pe_tqc_memoryless,Pe_tqc_worst,Pe_two_qubit_mu099\n";
    for (const Row& r : rows)
        out << r.eps << "," << r.memoryless << "," << r.worst << "," << r.two_qubit << "\n";
}

std::vector<SuiteResult> cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& warnings)
{
    std::vector<SuiteResult> results;
    auto guarded = [&](const std::string& name, auto&& body) {
        SuiteResult r;
        r.name = name;
        try {
            body(r);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("error: ") + e.what();
        }
        results.push_back(r);
    };

    const ChannelParams& params = config.params;

    // Time-domain vs spectral covariance; needs a pointwise autocorrelation.
    guarded("covariance routes (time domain vs spectral)", [&](SuiteResult& r) {
        PowerSpectrum spec = config.spectrum;
        if (is_white(spec)) {
            spec = LorentzianSpectrum{};
            r.detail = "white spectrum configured; checked on lorentzian(1, 1). ";
        }
        ChannelParams p = params;
        p.uses = std::max<std::size_t>(p.uses, 3);
        const PhaseCovariance a = covariance_from_spectrum(spec, p);
        const PhaseCovariance b = covariance_from_autocorrelation(spec, p);
        double dev = std::abs(a.eta2() - b.eta2()) / a.eta2();
        for (std::size_t m = 1; m < p.uses; ++m)
            dev = std::max(dev, std::abs(a.mu(m) - b.mu(m)) / std::max(std::abs(a.mu(m)), 1e-300));
        r.deviation = dev;
        r.tolerance = 1e-7;
        r.passed = dev <= r.tolerance;
    });

    guarded("white-noise kernel closed form", [&](SuiteResult& r) {
        const double tp = params.transit_time;
        double dev = 0.0;
        for (double delta : {0.0, 0.5 * tp, tp, 2.0 * tp, params.spacing}) {
            const double q = kernel_integral(WhiteSpectrum{1.0}, tp, delta);
            dev = std::max(dev, std::abs(q - white_kernel_exact(1.0, tp, delta)) / white_kernel_exact(1.0, tp, 0.0));
        }
        r.deviation = dev;
        r.tolerance = 1e-8;
        r.passed = dev <= r.tolerance;
    });

    guarded("closed-form TQC fidelity vs circuit (50 random points)", [&](SuiteResult& r) {
        auto rng = substream(config.mc.seed, 0xC0DE);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double dev = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double g = 0.05 + 0.95 * unit(rng);
            const double mu1 = unit(rng);
            const double lo = std::max(0.0, 2.0 * mu1 * mu1 - 1.0);
            const double mu2 = lo + (mu1 - lo) * unit(rng);
            const auto cov = PhaseCovariance::from_damping(g, {1.0, mu1, mu2});
            dev = std::max(dev, std::abs(fe_tqc_via_circuit(cov) - fe_tqc_memory(g, mu1, mu2)));
        }
        r.deviation = dev;
        r.tolerance = 1e-12;
        r.passed = dev <= r.tolerance;
    });

    const double g_mc = g_from_epsilon(config.mc.epsilon);
    warn_if_infeasible(warnings, config.mc.mu1, config.mc.mu2);

    guarded("Gaussian average vs decay factor (direct sampling)", [&](SuiteResult& r) {
        const auto cov = PhaseCovariance::from_damping(g_mc, {1.0, config.mc.mu1, config.mc.mu2});
        const auto ensemble = sample_phases_direct(cov, config.mc.seed, config.mc.samples);
        double worst = 0.0;
        for (const auto& [j, l] : {std::pair{"000", "001"}, std::pair{"010", "100"}, std::pair{"000", "111"},
                                   std::pair{"001", "100"}, std::pair{"011", "110"}}) {
            const CoherenceLabel label = CoherenceLabel::parse(j, l);
            const McEstimate est = mc_decay_factor(label, ensemble);
            const double exact = decay_factor(label, cov);
            worst = std::max(worst, std::abs(est.value.real() - exact) / std::max(est.std_error.real(), 1e-300));
            worst = std::max(worst, std::abs(est.value.imag()) / std::max(est.std_error.imag(), 1e-300));
        }
        r.deviation = worst;
        r.tolerance = 4.0;
        r.detail = "deviation in standard errors. ";
        r.passed = worst <= r.tolerance;
    });

    guarded("Monte Carlo TQC fidelity vs closed form", [&](SuiteResult& r) {
        const auto cov = PhaseCovariance::from_damping(g_mc, {1.0, config.mc.mu1, config.mc.mu2});
        const auto ensemble = sample_phases_direct(cov, config.mc.seed + 1, config.mc.samples);
        const McEstimate est = mc_tqc_fidelity(ensemble);
        const double exact = fe_tqc_memory(g_mc, config.mc.mu1, config.mc.mu2);
        r.deviation = std::abs(est.value.real() - exact) / std::max(est.standard_error(), 1e-300);
        r.tolerance = 4.0;
        r.detail = "deviation in standard errors. ";
        r.passed = r.deviation <= r.tolerance;
    });

    guarded("OU trajectory covariance vs spectral covariance", [&](SuiteResult& r) {
        LorentzianSpectrum ou{};
        if (const auto* lor = std::get_if<LorentzianSpectrum>(&config.spectrum))
            ou = *lor;
        else
            r.detail = "non-Lorentzian spectrum configured; checked on lorentzian(1, 1). ";
        ChannelParams p = params;
        p.uses = std::max<std::size_t>(p.uses, 3);
        const double dt = config.mc.dt.value_or(p.transit_time / 200.0);
        const std::size_t n = std::max<std::size_t>(config.mc.samples / 10, 1000);
        const auto ensemble = sample_phases_trajectory(ou, p, config.mc.seed + 2, n, dt);
        const MomentEstimate moments = sample_moments(ensemble);
        const Eigen::MatrixXd sigma = covariance_from_spectrum(ou, p).matrix();
        double worst = 0.0;
        for (Eigen::Index k = 0; k < sigma.rows(); ++k)
            for (Eigen::Index kp = 0; kp < sigma.cols(); ++kp) {
                const double allowed = 4.0 * moments.covariance_error(k, kp) + 0.02 * std::abs(sigma(k, kp));
                worst = std::max(worst, std::abs(moments.covariance(k, kp) - sigma(k, kp)) / allowed);
            }
        r.deviation = worst;
        r.tolerance = 1.0;
        r.detail += "deviation relative to 4 SE + 2% allowance. ";
        r.passed = worst <= r.tolerance;
    });

    out << std::setprecision(6);
    write_metadata(out, config);
    for (const auto& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": deviation " << r.deviation << " (tolerance "
            << r.tolerance << ")";
        if (!r.detail.empty())
            out << " " << trim(r.detail);
        out << "\n";
    }
    return results;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Correlated dephasing channel: decay factors, code fidelities, oracle validation"};
    app.require_subcommand(1);
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::vector<std::string> overrides;
    for (const char* name : {"decay", "fig2", "fig3", "validate"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "random seed override");
        sub->add_option("--out", out_path, "output path (default stdout)");
        sub->add_option("--set", overrides, "extra key=value override, repeatable");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        const Command command = parse_command(app.get_subcommands().front()->get_name());
        ConfigEntries entries;
        std::string origin = "config";
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            std::stringstream buffer;
            buffer << in.rdbuf();
            origin = config_path;
            entries = parse_entries(buffer.str(), origin);
        }
        for (const auto& o : overrides) {
            const auto eq = o.find('=');
            if (eq == std::string::npos)
                throw ConfigError("--set expects key=value, got '" + o + "'");
            entries[trim(o.substr(0, eq))] = ConfigEntry{trim(o.substr(eq + 1)), 0};
        }
        if (seed)
            entries["seed"] = ConfigEntry{std::to_string(*seed), 0};
        if (!out_path.empty())
            entries["out"] = ConfigEntry{out_path, 0};

        const RunConfig config = build_config(command, entries, origin);

        std::ofstream file;
        std::ostream* sink = &out;
        if (!config.output_path.empty()) {
            file.open(config.output_path);
            if (!file)
                throw ConfigError("cannot open output file '" + config.output_path + "'");
            sink = &file;
        }

        switch (command) {
        case Command::Decay:
            cmd_decay(config, *sink, err);
            break;
        case Command::Fig2:
            cmd_fig2(config, *sink, err);
            break;
        case Command::Fig3:
            cmd_fig3(config, *sink, err);
            break;
        case Command::Validate: {
            const auto results = cmd_validate(config, *sink, err);
            const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
            return ok ? 0 : 1;
        }
        }
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace memphase::cli
