#include "cli.hpp"

#include "tables.hpp"
#include "validation.hpp"

#include "igbm/igbm.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace igbm::cli {
namespace {

using nlohmann::json;

const char* kThreadsEnv = "IGBM_THREADS";

struct Flag {
    const char* name;
    const char* help;
};

const std::vector<Flag> kRateFlags{{"b", "scaled Laplace variable b >= 0"}, {"zeta", "scaled drift zeta = aT"}};
const std::vector<Flag> kBondFlags{
    {"r0", "initial short rate"},
    {"sigma", "volatility"},
    {"a", "drift (default 0)"},
    {"T", "maturity in years"},
    {"method", "asymptotic|exact|small-r0|taylor|perpetual|mc (default asymptotic)"},
    {"quad-tol", "quadrature tolerance for --method exact (default 1e-9)"},
    {"paths", "Monte Carlo paths (default 1000000)"},
    {"steps", "Monte Carlo time steps (default 512)"},
};
const std::vector<Flag> kAsianFlags{
    {"s0", "spot"},
    {"k", "strike"},
    {"r", "interest rate"},
    {"q", "dividend yield (default 0)"},
    {"sigma", "volatility"},
    {"T", "maturity in years"},
    {"kind", "call|put (default call)"},
    {"method", "approx|mc|otm-limit (default approx)"},
    {"paths", "Monte Carlo paths (default 1000000)"},
    {"steps", "Monte Carlo time steps (default 512)"},
};
const std::vector<Flag> kMcFlags{
    {"theta", "Laplace variable (default 0 with --moment)"},
    {"sigma", "volatility"},
    {"a", "drift (default 0)"},
    {"T", "horizon in years"},
    {"moment", "estimate E[X_T^k] instead of the Laplace transform"},
    {"paths", "paths (default 1000000)"},
    {"steps", "time steps (default 512)"},
};

class Params {
public:
    Params(const std::string& command, const std::map<std::string, std::string>& values)
        : command_(command), values_(values)
    {
    }

    bool has(const std::string& name) const { return values_.count(name) > 0; }

    double number(const std::string& name) const
    {
        const auto it = values_.find(name);
        if (it == values_.end()) {
            throw InvalidArgument(command_ + ": missing required --" + name);
        }
        return parse_number(name, it->second);
    }

    double number(const std::string& name, double fallback) const
    {
        return has(name) ? number(name) : fallback;
    }

    std::size_t count(const std::string& name, std::size_t fallback) const
    {
        if (!has(name)) {
            return fallback;
        }
        const double v = number(name);
        if (v < 1.0 || v != std::floor(v) || v > 1e12) {
            throw InvalidArgument(command_ + ": --" + name + " expects a positive integer");
        }
        return static_cast<std::size_t>(v);
    }

    std::string text(const std::string& name, const std::string& fallback) const
    {
        const auto it = values_.find(name);
        return it == values_.end() ? fallback : it->second;
    }

private:
    double parse_number(const std::string& name, const std::string& s) const
    {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty() || !std::isfinite(v)) {
            throw InvalidArgument(command_ + ": --" + name + " expects a finite number, got '" + s + "'");
        }
        return v;
    }

    std::string command_;
    const std::map<std::string, std::string>& values_;
};

// Fixed decimal rendering with the given number of significant digits.
std::string significant(double v, int digits)
{
    if (v == 0.0 || !std::isfinite(v)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", digits - 1, v);
        return buf;
    }
    const int magnitude = static_cast<int>(std::floor(std::log10(std::fabs(v))));
    const int decimals = std::max(0, digits - 1 - magnitude);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string fixed(double v, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string plain(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

MCOptions mc_options(const RunSpec& spec, const Params& p)
{
    MCOptions o;
    o.n_paths = p.count("paths", o.n_paths);
    o.n_steps = p.count("steps", o.n_steps);
    if (spec.seed) {
        o.seed = *spec.seed;
    }
    o.threads = spec.threads.value_or(0);
    return o;
}

json mc_json(const MCEstimate& e)
{
    return {{"mean", e.mean},
            {"std_error", e.std_error},
            {"n_paths", e.n_paths},
            {"n_steps", e.n_steps},
            {"seed", e.seed}};
}

json rate_command(const Params& p)
{
    const double b = p.number("b");
    const double zeta = p.number("zeta");
    const RateEval r = rate_R(b, zeta);
    return {{"b", b},
            {"zeta", zeta},
            {"branch", to_string(r.branch)},
            {"root", r.root},
            {"R", r.value},
            {"J_B", 2.0 * b * b * r.value}};
}

json bond_command(const RunSpec& spec, const Params& p)
{
    const std::string method = p.text("method", "asymptotic");
    const double r0 = p.number("r0");
    const double sigma = p.number("sigma");
    const double a = p.number("a", 0.0);
    auto require_zero_drift = [&] {
        if (a != 0.0) {
            throw InvalidArgument("bond: --method " + method + " is defined for a = 0 only");
        }
    };

    BondQuote q;
    if (method == "perpetual") {
        q = bond_perpetual(r0, sigma, a);
    } else {
        const double T = p.number("T");
        if (method == "asymptotic") {
            q = bond_asymptotic(r0, sigma, a, T);
        } else if (method == "exact") {
            require_zero_drift();
            q = bond_exact_zero_drift(r0, sigma, T, p.number("quad-tol", 1e-9));
        } else if (method == "small-r0") {
            q = bond_small_rate(r0, sigma, a, T);
        } else if (method == "taylor") {
            require_zero_drift();
            q = bond_taylor_small_T(r0, sigma, T);
        } else if (method == "mc") {
            const MCEstimate e = mc_laplace(r0, sigma, a, T, mc_options(spec, p));
            q.price = e.mean;
            q.method = BondMethod::MonteCarlo;
            q.yield_equiv = -std::log(e.mean) / T;
            q.std_error = e.std_error;
        } else {
            throw InvalidArgument("bond: unknown --method '" + method + "'");
        }
    }

    json diag = json::object();
    switch (q.method) {
    case BondMethod::Asymptotic:
        diag = {{"R", q.rate}, {"root", q.root}};
        break;
    case BondMethod::ExactQuadrature:
        diag = {{"error_estimate", q.error_estimate}, {"lobes", q.lobes}};
        break;
    case BondMethod::SmallRate:
        diag = {{"first_term", q.first_term}, {"second_term", q.second_term}};
        break;
    case BondMethod::MonteCarlo:
        diag = {{"std_error", q.std_error}};
        break;
    case BondMethod::TaylorSmallT:
    case BondMethod::Perpetual:
        break;
    }
    return {{"price", q.price}, {"method", to_string(q.method)}, {"yield_equiv", q.yield_equiv},
            {"diagnostics", diag}};
}

json asian_command(const RunSpec& spec, const Params& p)
{
    AsianInputs in;
    in.S0 = p.number("s0");
    in.K = p.number("k");
    in.r = p.number("r");
    in.q = p.number("q", 0.0);
    in.sigma = p.number("sigma");
    in.T = p.number("T");
    const std::string kind = p.text("kind", "call");
    if (kind != "call" && kind != "put") {
        throw InvalidArgument("asian: --kind must be call or put, got '" + kind + "'");
    }
    in.kind = kind == "call" ? OptionKind::Call : OptionKind::Put;
    const std::string method = p.text("method", "approx");

    if (method == "approx") {
        const OptionQuote q = asian_price_approx(in);
        return {{"price", q.price}, {"method", to_string(q.method)}, {"kind", kind},
                {"forward", q.forward}, {"vol", q.vol}, {"rate", q.rate}};
    }
    if (method == "mc") {
        const MCEstimate e = mc_asian_price(in, mc_options(spec, p));
        json j = {{"price", e.mean}, {"method", "mc"}, {"kind", kind},
                  {"forward", a_fwd(in.S0, in.r - in.q, in.T)}, {"std_error", e.std_error}};
        j["mc"] = mc_json(e);
        return j;
    }
    if (method == "otm-limit") {
        validate(in);
        const double zeta = (in.r - in.q) * in.T;
        const double limit = otm_log_price_limit(in.K, in.S0, in.sigma, in.r - in.q, in.T, in.kind);
        return {{"method", "otm-limit"}, {"kind", kind}, {"log_price_limit", limit},
                {"rate", rate_ibs(in.K / in.S0, zeta).value}};
    }
    throw InvalidArgument("asian: unknown --method '" + method + "'");
}

json mc_command(const RunSpec& spec, const Params& p)
{
    const double sigma = p.number("sigma");
    const double a = p.number("a", 0.0);
    const double T = p.number("T");
    const MCOptions o = mc_options(spec, p);
    if (p.has("moment")) {
        const double k = p.number("moment");
        if (k < 1.0 || k != std::floor(k) || k > 64.0) {
            throw InvalidArgument("mc: --moment expects an integer in [1, 64]");
        }
        json j = mc_json(mc_moment(static_cast<int>(k), sigma, a, T, o));
        j["quantity"] = "moment";
        j["k"] = static_cast<int>(k);
        return j;
    }
    json j = mc_json(mc_laplace(p.number("theta"), sigma, a, T, o));
    j["quantity"] = "laplace";
    return j;
}

void write_table1(std::ostream& os)
{
    os << "T,sigma,B_exact,R_exact_pct,R_asympt_pct\n";
    for (const auto& row : tables::kTable1) {
        const double r0 = tables::kTable1R0;
        const BondQuote exact = bond_exact_zero_drift(r0, row.sigma, row.T);
        const BondQuote asy = bond_asymptotic(r0, row.sigma, 0.0, row.T);
        os << plain(row.T) << ',' << plain(row.sigma) << ',' << significant(exact.price, 6) << ','
           << fixed(100.0 * exact.yield_equiv, 3) << ',' << fixed(100.0 * asy.yield_equiv, 3) << '\n';
    }
}

void write_table3(std::ostream& os)
{
    os << "T,xi,neg_log_B_over_T,B_asympt,B_reference\n";
    for (const auto& row : tables::kTable3) {
        const BondQuote q = bond_asymptotic(tables::kTable3R0, tables::kTable3Sigma, tables::kTable3A, row.T);
        os << plain(row.T) << ',' << fixed(q.root, 6) << ',' << fixed(q.yield_equiv, 5) << ','
           << significant(q.price, 6) << ',' << fixed(row.B_reference, 3) << '\n';
    }
}

void write_figure1(std::ostream& os)
{
    os << "r0,sigma,T_max\n";
    for (double sigma : tables::kFigure1Sigmas) {
        for (int i = 1; i <= 20; ++i) {
            const double r0 = 0.01 * i;
            os << plain(r0) << ',' << plain(sigma) << ',' << significant(t_max(r0, sigma), 6) << '\n';
        }
    }
}

void emit_json(const RunSpec& spec, const json& j, std::ostream& os)
{
    if (spec.output == OutputFormat::Json) {
        os << j.dump(2) << '\n';
        return;
    }
    // One header row and one value row over the scalar fields.
    std::string header;
    std::string values;
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            continue;
        }
        header += (header.empty() ? "" : ",") + key;
        std::string v = value.is_string() ? value.get<std::string>() : value.dump();
        values += (values.empty() ? "" : ",") + v;
    }
    os << header << '\n' << values << '\n';
}

std::optional<unsigned> threads_from_env()
{
    const char* v = std::getenv(kThreadsEnv);
    if (v == nullptr || *v == '\0') {
        return std::nullopt;
    }
    char* end = nullptr;
    const unsigned long n = std::strtoul(v, &end, 10);
    if (*end != '\0' || n > 1024) {
        throw InvalidArgument(std::string(kThreadsEnv) + " must be an integer in [0, 1024]");
    }
    return static_cast<unsigned>(n);
}

} // namespace

std::optional<RunSpec> parse(const std::vector<std::string>& args, std::ostream& out)
{
    CLI::App app{"Asymptotic Laplace transform of the gBM time-integral: Dothan bonds and Asian options", "igbm"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    std::string out_path;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    app.add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "write the artifact to FILE");
    auto* seed_opt = app.add_option("--seed", seed, "Monte Carlo seed");
    auto* threads_opt = app.add_option("--threads", threads, "worker threads (0 = all cores)");

    std::map<std::string, std::map<std::string, std::string>> storage;
    std::vector<std::pair<CLI::App*, Subcommand>> subs;
    auto add = [&](const char* name, const char* help, Subcommand cmd, const std::vector<Flag>& flags) {
        CLI::App* sub = app.add_subcommand(name, help);
        auto& slot = storage[name];
        for (const auto& f : flags) {
            sub->add_option(std::string("--") + f.name, slot[f.name], f.help);
        }
        subs.emplace_back(sub, cmd);
        return sub;
    };
    add("rate", "evaluate R(b, zeta) and J_B", Subcommand::Rate, kRateFlags);
    add("bond", "zero-coupon bond price in the Dothan model", Subcommand::Bond, kBondFlags);
    add("asian", "Asian option price", Subcommand::Asian, kAsianFlags);
    add("mc", "Monte Carlo estimate for the gBM time-integral", Subcommand::MonteCarlo, kMcFlags);
    CLI::App* reproduce = add("reproduce", "regenerate a published table or figure as CSV", Subcommand::Reproduce, {});
    std::string target;
    reproduce->add_option("target", target, "table1|table3|figure1")
        ->required()
        ->check(CLI::IsMember({"table1", "table3", "figure1"}));
    CLI::App* validate_cmd = add("validate", "run the invariant suites", Subcommand::Validate, {});
    bool quick = false;
    bool with_mc = false;
    validate_cmd->add_flag("--quick", quick, "coarse grids");
    validate_cmd->add_flag("--mc", with_mc, "include the Monte Carlo cross-checks");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw InvalidArgument(std::string("arguments: ") + e.what());
    }

    RunSpec spec;
    spec.output = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    if (!out_path.empty()) {
        spec.out_path = out_path;
    }
    if (seed_opt->count() > 0) {
        spec.seed = seed;
    }
    spec.threads = threads_opt->count() > 0 ? std::optional<unsigned>(threads) : threads_from_env();
    for (const auto& [sub, cmd] : subs) {
        if (!sub->parsed()) {
            continue;
        }
        spec.subcommand = cmd;
        for (const auto* opt : sub->get_options()) {
            if (opt->count() == 0 || opt->get_lnames().empty()) {
                continue;
            }
            const std::string& name = opt->get_lnames().front();
            spec.params[name] = storage[sub->get_name()][name];
        }
    }
    if (spec.subcommand == Subcommand::Reproduce) {
        spec.params["target"] = target;
    }
    if (spec.subcommand == Subcommand::Validate) {
        if (quick) {
            spec.params["quick"] = "1";
        }
        if (with_mc) {
            spec.params["mc"] = "1";
        }
    }
    return spec;
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err)
{
    std::ofstream file;
    if (spec.out_path) {
        file.open(*spec.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open '" << *spec.out_path << "' for writing\n";
            return kArgumentError;
        }
    }
    std::ostream& os = spec.out_path ? static_cast<std::ostream&>(file) : out;

    switch (spec.subcommand) {
    case Subcommand::Rate:
        emit_json(spec, rate_command(Params("rate", spec.params)), os);
        break;
    case Subcommand::Bond:
        emit_json(spec, bond_command(spec, Params("bond", spec.params)), os);
        break;
    case Subcommand::Asian:
        emit_json(spec, asian_command(spec, Params("asian", spec.params)), os);
        break;
    case Subcommand::MonteCarlo:
        emit_json(spec, mc_command(spec, Params("mc", spec.params)), os);
        break;
    case Subcommand::Reproduce: {
        const std::string target = spec.params.count("target") ? spec.params.at("target") : "";
        if (target == "table1") {
            write_table1(os);
        } else if (target == "table3") {
            write_table3(os);
        } else if (target == "figure1") {
            write_figure1(os);
        } else {
            throw InvalidArgument("reproduce: unknown target '" + target + "'");
        }
        break;
    }
    case Subcommand::Validate: {
        validation::Options opts;
        opts.quick = spec.params.count("quick") > 0;
        opts.monte_carlo = spec.params.count("mc") > 0;
        opts.threads = spec.threads.value_or(0);
        int failed = 0;
        const auto results = validation::run_all(opts);
        for (const auto& r : results) {
            os << validation::format(r) << '\n';
            failed += r.passed ? 0 : 1;
        }
        os << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << '\n';
        return failed == 0 ? kOk : kValidationFailure;
    }
    }
    return kOk;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const auto spec = parse(args, out);
        if (!spec) {
            return kOk;
        }
        return run(*spec, out, err);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kArgumentError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kArgumentError;
    } catch (const BranchError& e) {
        err << "error: " << e.what() << '\n';
        return kArgumentError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalFailure;
    }
}

} // namespace igbm::cli
