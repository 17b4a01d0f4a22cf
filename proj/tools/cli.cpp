#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ineqforge/errors.hpp"
#include "ineqforge/functionals.hpp"
#include "ineqforge/report.hpp"
#include "ineqforge/spectral.hpp"
#include "ineqforge/weight_chain.hpp"

namespace ineqforge::cli {
namespace {

using chains::FamilyTag;
using chains::WeightChain;
using nlohmann::json;

const std::vector<std::string> kCommands{"weights", "constants", "verify",
                                         "falsify", "identity",  "probe"};

struct Bound {
    CLI::App app{"ineq_forge"};
    RunConfig c;
    std::string config_file;
    bool no_timestamp = false;

    Bound() {
        app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        app.add_option("command", c.command, "weights|constants|verify|falsify|identity|probe")
            ->required()
            ->check(CLI::IsMember(kCommands));
        app.add_option("--config", config_file, "key=value file with the same keys as the flags");
        app.add_option("--family", c.family, "hardy|hardy-exterior|gaussian|hp|hp-exterior");
        app.add_option("--d", c.d, "dimension");
        app.add_option("--a", c.a, "chain parameter (Hardy, gaussian d=2)");
        app.add_option("--alpha", c.alpha, "weight exponent (hp)");
        app.add_option("--beta", c.beta, "prefactor (hp, d=2)");
        app.add_option("--tstar", c.tstar, "fixed point (hp, d=2)");
        app.add_option("--delta", c.delta, "Hardy ball radius delta_Omega (overrides --a)");
        app.add_option("--N", c.N, "truncation order");
        app.add_option("--eps", c.inflation, "inflation of the level-N weight");
        app.add_option("--convention", c.convention, "remainder|literal");
        app.add_option("--ell", c.ell, "angular index");
        app.add_option("--extra-r2", c.extra_r2, "extra |x|^2 weight (gaussian)");
        app.add_option("--extra-const", c.extra_const, "extra constant weight (gaussian)");
        app.add_option("--rin", c.rin, "inner radius");
        app.add_option("--rout", c.rout, "outer radius");
        app.add_option("--log-rin", c.log_rin, "inner log radius");
        app.add_option("--log-rout", c.log_rout, "outer log radius");
        app.add_option("--nodes", c.nodes, "refinement schedule (node counts)")
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
            ->delimiter(',');
        app.add_option("--t-grid", c.t_grid, "lo:hi:n");
        app.add_option("--k", c.k, "probe level");
        app.add_option("--candidate", c.candidate, "partial_sum|scaled_level|zero");
        app.add_option("--scale", c.candidate_scale, "candidate multiplier");
        app.add_option("--samples", c.samples, "random identity samples");
        app.add_option("--seed", c.seed, "random seed");
        app.add_option("--output", c.output, "output path, - for stdout");
        app.add_option("--format", c.format, "csv|json|auto")
            ->check(CLI::IsMember({"csv", "json", "auto"}));
        app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");
    }
};

std::vector<std::string> config_tokens(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::vector<std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "command") {
            out.push_back(value);
        } else if (key == "no-timestamp") {
            if (value == "true" || value == "1") out.push_back("--no-timestamp");
        } else {
            out.push_back("--" + key);
            out.push_back(value);
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s;
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("--t-grid expects lo:hi:n, got '" + spec + "'");
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;
    try {
        lo = std::stod(parts[0]);
        hi = std::stod(parts[1]);
        n = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw UsageError("--t-grid expects lo:hi:n, got '" + spec + "'");
    }
    if (n < 0 || (n >= 2 && !(hi > lo))) throw UsageError("--t-grid needs lo < hi and n >= 0");
    std::vector<double> t;
    for (int i = 0; i < n; ++i) t.push_back(n == 1 ? lo : lo + (hi - lo) * i / double(n - 1));
    return t;
}

std::string resolve_format(const RunConfig& c) {
    if (c.format != "auto") return c.format;
    const auto ext = std::filesystem::path(c.output).extension();
    if (ext == ".csv") return "csv";
    if (ext == ".json") return "json";
    return c.command == "weights" || c.command == "identity" ? "csv" : "json";
}

spectral::AssemblyOptions assembly_options(const RunConfig& c) {
    spectral::AssemblyOptions o;
    o.N = c.N;
    o.inflation = c.inflation;
    o.conv = report::convention_from_string(c.convention);
    o.ell = c.ell;
    o.extra_r2 = c.extra_r2;
    o.extra_const = c.extra_const;
    return o;
}

spectral::Domain domain_for(const RunConfig& c, const WeightChain& chain) {
    if (c.log_domain) return spectral::Domain::log_radii(c.log_rin, c.log_rout);
    if (c.rin > 0.0 || c.rout > 0.0) return spectral::Domain::radii(c.rin, c.rout);
    return spectral::default_domain(chain);
}

Status verdict_status(spectral::Verdict v, bool expect_falsified) {
    switch (v) {
        case spectral::Verdict::Verified: return expect_falsified ? Status::Inconclusive : Status::Ok;
        case spectral::Verdict::Falsified: return expect_falsified ? Status::Ok : Status::Unexpected;
        case spectral::Verdict::Inconclusive: return Status::Inconclusive;
    }
    return Status::Inconclusive;
}

RunResult run_weights(const RunConfig& c) {
    WeightChain chain({make_family(c), c.N});
    const auto table = report::weights_table(chain, c.N, parse_grid(c.t_grid));
    return {Status::Ok, resolve_format(c) == "csv" ? report::to_csv(table) : report::to_json(table), ""};
}

RunResult run_constants(const RunConfig& c) {
    const auto l = functionals::lambda_constant(c.alpha, c.d);
    if (resolve_format(c) == "csv") {
        report::Table t;
        t.columns = {"alpha", "d", "lambda", "regime", "fails"};
        t.rows.push_back({c.alpha, double(c.d), l.fails ? NAN : l.value, double(l.regime),
                          l.fails ? 1.0 : 0.0});
        return {Status::Ok, report::to_csv(t), ""};
    }
    json j;
    j["alpha"] = c.alpha;
    j["d"] = c.d;
    if (l.fails) {
        j["lambda"] = nullptr;
        j["fails"] = true;
        j["message"] = "the inequality fails at alpha = -(d-2)/2";
    } else {
        j["lambda"] = l.value;
        j["fails"] = false;
        j["regime"] = l.regime;
    }
    if (c.timestamp) j["timestamp"] = utc_now();
    return {Status::Ok, j.dump(2) + "\n", ""};
}

RunResult emit_report(const RunConfig& c, const spectral::VerificationReport& rep, bool expect_falsified) {
    RunResult r;
    r.status = verdict_status(rep.verdict, expect_falsified);
    r.output = resolve_format(c) == "csv" ? report::to_csv(report::lambda_table(rep))
                                          : report::to_json(rep, c.timestamp ? utc_now() : "");
    r.message = spectral::to_string(rep.verdict) + ": lambda_min=" + num(rep.lambda_min) + " tol=" + num(rep.tolerance);
    return r;
}

RunResult run_verify(const RunConfig& c) {
    WeightChain chain({make_family(c), c.N});
    const auto dom = domain_for(c, chain);
    const auto rep = spectral::verify_inequality(chain, dom, assembly_options(c), c.nodes);
    return emit_report(c, rep, false);
}

RunResult run_falsify(const RunConfig& c) {
    WeightChain chain({make_family(c), c.N});
    const auto opts = assembly_options(c);
    const auto rep = spectral::falsify_inflation(chain, opts, spectral::falsification_schedule(chain),
                                                 c.nodes.empty() ? 4000 : c.nodes.back());
    return emit_report(c, rep, true);
}

RunResult run_identity(const RunConfig& c) {
    const int k = std::max(1, c.N);
    WeightChain chain({make_family(c), k});
    std::mt19937_64 rng(c.seed);
    const double hi = std::min(chain.t_hi(), 10.0) * 0.99;
    const double lo = std::max(chain.t_lo(), hi * 1e-3);
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    report::Table t;
    t.columns = {"t", "identity", "compat_a", "compat_b", "residual"};
    double worst = 0.0;
    for (int i = 0; i < c.samples; ++i) {
        const double x = std::exp(u(rng));
        const auto r = chain.recursion_residual(x, k);
        t.rows.push_back({x, r.identity_applies ? r.identity : NAN, r.compat_a, r.compat_b, r.value()});
        worst = std::max(worst, r.value());
    }
    RunResult out;
    out.status = worst < 1e-8 ? Status::Ok : Status::Unexpected;
    out.output = resolve_format(c) == "csv" ? report::to_csv(t) : report::to_json(t);
    out.message = "max residual " + num(worst);
    return out;
}

RunResult run_probe(const RunConfig& c) {
    WeightChain chain({make_family(c), std::max(c.N, c.k + 1)});
    std::function<double(double)> cand;
    if (c.candidate == "partial_sum") {
        cand = spectral::partial_sum_candidate(chain, c.N);
        if (c.candidate_scale != 1.0) {
            auto base = cand;
            const double s = c.candidate_scale;
            cand = [base, s](double t) { return s * base(t); };
        }
    } else if (c.candidate == "scaled_level") {
        const WeightChain* ch = &chain;
        const int k = c.k;
        const double s = c.candidate_scale;
        cand = [ch, k, s](double t) { return s * ch->weight_sequence(t, k).w[k]; };
    } else if (c.candidate == "zero") {
        cand = [](double) { return 0.0; };
    } else {
        throw UsageError("--candidate must be partial_sum, scaled_level or zero");
    }
    const auto p = spectral::remainder_probe(chain, cand, c.k);
    RunResult r;
    switch (p.verdict) {
        case spectral::ProbeVerdict::WithinOptimal: r.status = Status::Ok; break;
        case spectral::ProbeVerdict::ExceedsOptimal: r.status = Status::Unexpected; break;
        case spectral::ProbeVerdict::Inconclusive: r.status = Status::Inconclusive; break;
    }
    if (resolve_format(c) == "csv") {
        report::Table t;
        t.columns = {"t", "xi", "ratio"};
        for (std::size_t i = 0; i < p.t.size(); ++i) t.rows.push_back({p.t[i], p.xi[i], p.ratio[i]});
        r.output = report::to_csv(t);
    } else {
        r.output = report::to_json(p, c.timestamp ? utc_now() : "");
    }
    r.message = spectral::to_string(p.verdict) + ": limit=" + num(p.limit);
    return r;
}

}  // namespace

std::vector<std::string> valid_keys() {
    Bound b;
    std::vector<std::string> keys{"command"};
    for (const CLI::Option* o : b.app.get_options()) {
        for (const auto& n : o->get_lnames()) keys.push_back(n);
    }
    keys.erase(std::remove(keys.begin(), keys.end(), "help"), keys.end());
    return keys;
}

RunConfig parse(const std::vector<std::string>& args) {
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            const auto file = config_tokens(args[i + 1]);
            tokens.insert(tokens.begin(), file.begin(), file.end());
            ++i;
        } else if (args[i].rfind("--config=", 0) == 0) {
            const auto file = config_tokens(args[i].substr(9));
            tokens.insert(tokens.begin(), file.begin(), file.end());
        } else {
            tokens.push_back(args[i]);
        }
    }
    Bound b;
    std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
    try {
        b.app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()) + "\nvalid keys: " + join(valid_keys()));
    }
    RunConfig c = b.c;
    c.timestamp = !b.no_timestamp;
    c.log_domain = b.app.count("--log-rin") > 0 || b.app.count("--log-rout") > 0;
    if (c.log_domain && (b.app.count("--log-rin") == 0 || b.app.count("--log-rout") == 0)) {
        throw UsageError("--log-rin and --log-rout must be given together");
    }
    return c;
}

FamilyTag make_family(const RunConfig& c) {
    if (c.family == "hardy") {
        return c.delta > 0.0 ? FamilyTag::hardy_interior_radius(c.d, c.delta)
                             : FamilyTag::hardy_interior(c.d, c.a);
    }
    if (c.family == "hardy-exterior") return FamilyTag::hardy_exterior(c.d, c.a);
    if (c.family == "gaussian") {
        return c.d == 2 ? FamilyTag::gaussian_plane(c.a) : FamilyTag::gaussian_high_dim(c.d);
    }
    if (c.family == "hp") {
        return c.d == 2 ? FamilyTag::hp_plane(c.alpha, c.beta, c.tstar)
                        : FamilyTag::hp_low_dim(c.d, c.alpha);
    }
    if (c.family == "hp-exterior") return FamilyTag::hp_exterior(c.d, c.alpha);
    throw ParameterError("unknown family '" + c.family +
                         "' (expected hardy, hardy-exterior, gaussian, hp or hp-exterior)");
}

RunResult execute(const RunConfig& c) {
    try {
        if (c.command == "weights") return run_weights(c);
        if (c.command == "constants") return run_constants(c);
        if (c.command == "verify") return run_verify(c);
        if (c.command == "falsify") return run_falsify(c);
        if (c.command == "identity") return run_identity(c);
        if (c.command == "probe") return run_probe(c);
        return {Status::Usage, "", "unknown command '" + c.command + "'"};
    } catch (const UsageError& e) {
        return {Status::Usage, "", e.what()};
    } catch (const ParameterError& e) {
        return {Status::Usage, "", e.what()};
    } catch (const DomainError& e) {
        return {Status::Usage, "", e.what()};
    } catch (const PreconditionError& e) {
        return {Status::Usage, "", e.what()};
    } catch (const Error& e) {
        return {Status::Inconclusive, "", e.what()};
    }
}

Status run(const RunConfig& config, std::string* message) {
    RunResult r = execute(config);
    if (message) *message = r.message;
    if (r.status == Status::Usage) return r.status;
    if (config.output == "-") {
        std::cout << r.output;
        return r.status;
    }
    std::ofstream out(config.output, std::ios::binary);
    out << r.output;
    out.flush();
    if (!out) {
        if (message) *message = "cannot write '" + config.output + "'";
        return Status::Usage;
    }
    return r.status;
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        Bound b;
        std::cout << b.app.help();
        return args.empty() ? int(Status::Usage) : 0;
    }
    RunConfig config;
    try {
        config = parse(args);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return int(Status::Usage);
    }
    std::string message;
    const Status s = run(config, &message);
    if (!message.empty()) std::cerr << message << "\n";
    return int(s);
}

}  // namespace ineqforge::cli
