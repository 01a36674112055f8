// pim -- phase-integral approximations of order one and three built on the
// platform function P_s, with built-in identity verification, an ODE oracle
// for accuracy comparison, and a first-order quantization harness.
//
// Exit codes: 0 success, 1 usage/config error, 2 numerical breakdown,
//             3 verification failure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pim/approx.hpp"
#include "pim/oracle.hpp"
#include "pim/platform.hpp"
#include "pim/quantize.hpp"
#include "pim/verify.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBreakdown = 2;
constexpr int kExitVerifyFailed = 3;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_real(const std::string& s, const char* what) {
    if (s == "inf" || s == "+inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw pim::DomainError(std::string("cannot parse ") + what + " '" + s + "'");
    }
}

pim::ParamSet parse_params(const std::string& spec) {
    pim::ParamSet params;
    if (spec.empty()) return params;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw pim::DomainError("parameter binding '" + item + "' is not name=value");
        std::string name = item.substr(0, eq);
        params[name] = parse_real(item.substr(eq + 1), "parameter value");
    }
    return params;
}

struct GridSpec {
    double lo = 0.0, hi = 0.0;
    int n = 0;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    std::stringstream ss(s);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw pim::DomainError("grid must be lo:hi:n, got '" + s + "'");
    g.lo = parse_real(parts[0], "grid lo");
    g.hi = parse_real(parts[1], "grid hi");
    g.n = static_cast<int>(parse_real(parts[2], "grid n"));
    if (g.n < 2) throw pim::DomainError("grid needs n >= 2");
    if (!(g.lo < g.hi)) throw pim::DomainError("grid needs lo < hi");
    return g;
}

std::vector<double> grid_points(const GridSpec& g) {
    std::vector<double> zs(g.n);
    for (int i = 0; i < g.n; ++i) zs[i] = g.lo + (g.hi - g.lo) * i / (g.n - 1);
    return zs;
}

// Options shared by the subcommands that evaluate a potential.
struct PotentialOptions {
    std::string potential; // family:NAME or expr:STRING
    std::string expr;      // shorthand for expr:
    std::string params;
    std::string domain;    // lo:hi
    double s = 0.0;
    std::string preset;
    CLI::Option* s_opt = nullptr;

    void add_to(CLI::App* cmd, bool with_base = true) {
        cmd->add_option("--potential", potential,
                        "potential selector: family:{airy,weber,coulomb,radial-free} or "
                        "expr:<expression in z>");
        cmd->add_option("--expr", expr, "potential expression in z (same as expr:...)");
        cmd->add_option("--params", params, "parameter bindings, e.g. E=-0.5,Z=1,l=0");
        cmd->add_option("--domain", domain, "potential domain lo:hi (inf allowed)");
        if (with_base) {
            s_opt = cmd->add_option("--s", s, "platform parameter s");
            cmd->add_option("--preset", preset,
                            "base preset: unmodified | kramers-langer | no-centrifugal")
                ->excludes(s_opt);
        }
    }

    pim::Potential make_potential() const {
        std::string sel = potential;
        if (!expr.empty()) {
            if (!sel.empty())
                throw pim::DomainError("give either --potential or --expr, not both");
            sel = "expr:" + expr;
        }
        if (sel.empty()) throw pim::DomainError("no potential selected");
        pim::ParamSet ps = parse_params(params);
        if (sel.rfind("family:", 0) == 0) {
            return pim::Potential::builtin(sel.substr(7), ps);
        }
        if (sel.rfind("expr:", 0) == 0) {
            pim::Interval dom;
            if (!domain.empty()) {
                auto colon = domain.find(':');
                if (colon == std::string::npos)
                    throw pim::DomainError("domain must be lo:hi, got '" + domain + "'");
                dom.lo = parse_real(domain.substr(0, colon), "domain lo");
                dom.hi = parse_real(domain.substr(colon + 1), "domain hi");
            }
            return pim::Potential::from_source(sel.substr(5), ps, dom);
        }
        throw pim::DomainError("potential selector must start with family: or expr:");
    }

    pim::BaseSpec make_spec() const {
        if (!preset.empty()) {
            if (preset == "unmodified") return pim::BaseSpec::unmodified();
            if (preset == "kramers-langer") return pim::BaseSpec::kramers_langer();
            if (preset == "no-centrifugal") return pim::BaseSpec::no_centrifugal();
            throw pim::DomainError("unknown preset '" + preset + "'");
        }
        return pim::BaseSpec(s_opt && s_opt->count() > 0 ? s : 0.0);
    }
};

struct OutputOptions {
    std::string format = "csv";
    std::string out;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--format", format, "output format: csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out, "output path (default: standard output)");
    }

    void write(const std::vector<std::string>& columns,
               const std::vector<json>& rows) const {
        std::ostringstream text;
        if (format == "json") {
            json arr = json::array();
            for (const auto& r : rows) arr.push_back(r);
            text << arr.dump(2) << "\n";
        } else {
            for (std::size_t i = 0; i < columns.size(); ++i)
                text << (i ? "," : "") << columns[i];
            text << "\n";
            for (const auto& r : rows) {
                for (std::size_t i = 0; i < columns.size(); ++i) {
                    if (i) text << ",";
                    auto it = r.find(columns[i]);
                    if (it == r.end()) continue;
                    if (it->is_number())
                        text << fmt17(it->get<double>());
                    else if (!it->is_null())
                        text << it->get<std::string>();
                }
                text << "\n";
            }
        }
        if (out.empty()) {
            std::cout << text.str();
        } else {
            std::ofstream f(out, std::ios::binary);
            if (!f) throw pim::DomainError("cannot open output file '" + out + "'");
            f << text.str();
        }
    }
};

int run_eval(const PotentialOptions& pot, const OutputOptions& outopt,
             const GridSpec& grid) {
    pim::BaseFunction b = pim::make_base(pot.make_potential(), pot.make_spec());
    std::vector<json> rows;
    int skipped = 0;
    for (double z : grid_points(grid)) {
        json row;
        row["z"] = z;
        double q2 = NAN;
        bool in_domain = b.potential().domain().contains_interior(z);
        if (in_domain) q2 = b.q2(z);
        if (!in_domain || !(q2 > pim::kTurningPointGuard)) {
            row["note"] = in_domain ? "skipped: forbidden region (Q^2 <= guard)"
                                    : "skipped: outside domain";
            ++skipped;
            rows.push_back(std::move(row));
            continue;
        }
        try {
            pim::PlatformEval pe = pim::evaluate_platform(b, z);
            row["Q2"] = q2;
            row["Q"] = b.q(z);
            row["P"] = pe.p;
            row["dP_dz"] = pe.dp_dz;
            row["Y2"] = pe.y2;
            row["note"] = "";
        } catch (const pim::DomainError& e) {
            row["note"] = std::string("skipped: ") + e.what();
            ++skipped;
        }
        rows.push_back(std::move(row));
    }
    outopt.write({"z", "Q2", "Q", "P", "dP_dz", "Y2", "note"}, rows);
    if (skipped > 0)
        std::cerr << "warning: " << skipped << " grid point(s) skipped\n";
    return kExitOk;
}

int run_wavefunction(const PotentialOptions& pot, const OutputOptions& outopt,
                     const GridSpec& grid, int order, double anchor, double abs_tol,
                     double rel_tol) {
    if (order != 1 && order != 3)
        throw pim::DomainError("order must be 1 or 3");
    pim::BaseFunction b = pim::make_base(pot.make_potential(), pot.make_spec());
    pim::PhaseApprox pa(b,
                        order == 1 ? pim::ExpansionOrder::first : pim::ExpansionOrder::third,
                        anchor, +1, abs_tol, rel_tol);
    std::vector<json> rows;
    for (double z : grid_points(grid)) {
        double amp = pa.amplitude(z);
        double ph = pa.phase(z);
        std::complex<double> up = std::polar(amp, ph);
        json row;
        row["z"] = z;
        row["re_psi_plus"] = up.real();
        row["im_psi_plus"] = up.imag();
        row["amplitude"] = amp;
        row["phase"] = ph;
        rows.push_back(std::move(row));
    }
    outopt.write({"z", "re_psi_plus", "im_psi_plus", "amplitude", "phase"}, rows);
    return kExitOk;
}

int run_compare(const PotentialOptions& pot, const OutputOptions& outopt, double anchor,
                double probe, double tol) {
    pim::OrderComparison cmp =
        pim::compare_orders(pot.make_potential(), pot.make_spec(), anchor, probe, tol);
    json row;
    row["err_first"] = cmp.err_first;
    row["err_third"] = cmp.err_third;
    row["ratio"] = cmp.err_first > 0.0 ? cmp.err_third / cmp.err_first : 0.0;
    outopt.write({"err_first", "err_third", "ratio"}, {row});
    return kExitOk;
}

int run_verify(const std::vector<std::string>& corpus,
               const std::vector<std::string>& checks) {
    pim::VerifyOptions options;
    options.corpus = corpus;
    options.checks = checks;
    pim::VerifyReport report = pim::run_verify(options);
    for (const auto& c : report.checks) {
        std::printf("%s %-17s worst residual %.3e (threshold %.0e) at %s\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.worst, c.threshold,
                    c.worst_at.c_str());
    }
    if (!report.all_pass) {
        std::cerr << "verification failed\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}

int run_quantize(const OutputOptions& outopt, double Z, double l, int n_r, double s,
                 const std::string& preset, const std::string& bracket) {
    pim::BoundStateProblem prob;
    prob.Z = Z;
    prob.l = l;
    prob.n_r = n_r;
    if (!preset.empty()) {
        if (preset == "unmodified") prob.spec = pim::BaseSpec::unmodified();
        else if (preset == "kramers-langer") prob.spec = pim::BaseSpec::kramers_langer();
        else if (preset == "no-centrifugal") prob.spec = pim::BaseSpec(-2.0 * l);
        else throw pim::DomainError("unknown preset '" + preset + "'");
    } else {
        prob.spec = pim::BaseSpec(s);
    }
    auto [e_lo, e_hi] = pim::default_bracket(prob);
    if (!bracket.empty()) {
        auto colon = bracket.find(':');
        if (colon == std::string::npos)
            throw pim::DomainError("bracket must be E_lo:E_hi");
        e_lo = parse_real(bracket.substr(0, colon), "bracket lo");
        e_hi = parse_real(bracket.substr(colon + 1), "bracket hi");
    }
    double E = pim::eigenvalue(prob, e_lo, e_hi);
    json row;
    row["Z"] = Z;
    row["l"] = l;
    row["n_r"] = static_cast<double>(n_r);
    row["s"] = prob.spec.s;
    row["E"] = E;
    outopt.write({"Z", "l", "n_r", "s", "E"}, {row});
    return kExitOk;
}

int run_parse_check(const std::string& source, const std::string& params_spec,
                    std::optional<double> at) {
    try {
        pim::ExprPtr e = pim::parse(source);
        std::cout << "ok: " << pim::to_string(e) << "\n";
        pim::ExprPtr d = pim::differentiate(e);
        std::cout << "d/dz: " << pim::to_string(d) << "\n";
        if (at) {
            pim::ParamSet ps = parse_params(params_spec);
            std::cout << "value(" << fmt17(*at) << ") = " << fmt17(pim::evaluate(e, *at, ps))
                      << "\n";
            std::cout << "derivative(" << fmt17(*at) << ") = "
                      << fmt17(pim::evaluate(d, *at, ps)) << "\n";
        }
        return kExitOk;
    } catch (const pim::ParseError& err) {
        std::cerr << err.what();
        if (!err.expected().empty()) {
            std::cerr << " (expected:";
            for (const auto& t : err.expected()) std::cerr << " " << t;
            std::cerr << ")";
        }
        std::cerr << "\n";
        return kExitUsage;
    }
}

} // namespace

namespace {

// Flat key=value config support. CLI11 2.x does not process per-subcommand
// config files, so the file is expanded into trailing --key=value arguments
// instead; keys already given on the command line are skipped, which gives
// flags precedence over the file.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw pim::DomainError("--config needs a file path");
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (path.empty()) return args;

    std::ifstream file(path);
    if (!file) throw pim::DomainError("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(file, line)) {
        ++lineno;
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        auto eq = trimmed.find('=');
        if (eq == std::string::npos || eq == 0)
            throw pim::DomainError("config file " + path + " line " +
                                   std::to_string(lineno) + ": expected key=value, got '" +
                                   line + "'");
        std::string key = trimmed.substr(0, eq);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::string value = trimmed.substr(eq + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        std::string flag = "--" + key;
        bool given = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
        if (!given) args.push_back(flag + "=" + value);
    }
    return args;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"phase-integral approximations with the platform function P_s"};
    app.require_subcommand(1);

    // eval
    auto* eval = app.add_subcommand("eval", "tabulate Q^2, Q, P_s, dP_s/dz, Y_2 on a grid");
    PotentialOptions eval_pot;
    eval_pot.add_to(eval);
    OutputOptions eval_out;
    eval_out.add_to(eval);
    std::string eval_grid;
    eval->add_option("--grid", eval_grid, "z grid lo:hi:n")->required();

    // wavefunction
    auto* wf = app.add_subcommand("wavefunction", "tabulate psi_+ = A e^{i phi} on a grid");
    PotentialOptions wf_pot;
    wf_pot.add_to(wf);
    OutputOptions wf_out;
    wf_out.add_to(wf);
    std::string wf_grid;
    int wf_order = 3;
    double wf_anchor = 0.0, wf_abs = pim::kQuadDefaultAbsTol, wf_rel = pim::kQuadDefaultRelTol;
    wf->add_option("--grid", wf_grid, "z grid lo:hi:n")->required();
    wf->add_option("--order", wf_order, "approximation order: 1 or 3");
    wf->add_option("--anchor", wf_anchor, "phase reference point (regular, Q^2 > 0)")
        ->required();
    wf->add_option("--abs-tol", wf_abs, "quadrature absolute tolerance");
    wf->add_option("--rel-tol", wf_rel, "quadrature relative tolerance");

    // compare
    auto* cmp = app.add_subcommand(
        "compare", "first- vs third-order endpoint error against the ODE oracle");
    PotentialOptions cmp_pot;
    cmp_pot.add_to(cmp);
    OutputOptions cmp_out;
    cmp_out.add_to(cmp);
    double cmp_anchor = 0.0, cmp_probe = 0.0, cmp_tol = 1e-12;
    cmp->add_option("--anchor", cmp_anchor, "seed point for the oracle")->required();
    cmp->add_option("--probe", cmp_probe, "comparison point")->required();
    cmp->add_option("--tol", cmp_tol, "oracle local tolerance (1e-13 .. 1e-6)");

    // verify
    auto* ver = app.add_subcommand("verify", "run the built-in identity suite");
    std::vector<std::string> ver_corpus, ver_checks;
    ver->add_option("--corpus", ver_corpus,
                    "restrict to corpus entries: airy weber coulomb radial-free");
    ver->add_option("--check", ver_checks,
                    "restrict to checks: identity froman-reduction anchor-invariance "
                    "wronskian");

    // quantize
    auto* qz = app.add_subcommand(
        "quantize", "first-order bound-state energy of the coulomb potential");
    OutputOptions qz_out;
    qz_out.add_to(qz);
    double qz_Z = 1.0, qz_l = 0.0, qz_s = 1.0;
    int qz_nr = 0;
    std::string qz_preset, qz_bracket;
    qz->add_option("--Z", qz_Z, "nuclear charge");
    qz->add_option("--l", qz_l, "orbital quantum number");
    qz->add_option("--n-r", qz_nr, "radial quantum number (>= 0)");
    qz->add_option("--s", qz_s, "platform parameter (default 1: Kramers-Langer)");
    qz->add_option("--preset", qz_preset,
                   "base preset: unmodified | kramers-langer | no-centrifugal");
    qz->add_option("--bracket", qz_bracket, "energy bracket E_lo:E_hi (default automatic)");

    // parse-check
    auto* pc = app.add_subcommand("parse-check", "parse an expression and show d/dz");
    std::string pc_expr, pc_params;
    double pc_at = 0.0;
    pc->add_option("expression", pc_expr, "expression in z")->required();
    pc->add_option("--params", pc_params, "parameter bindings name=value,...");
    auto* pc_at_opt = pc->add_option("--at", pc_at, "also evaluate at this z");

    for (CLI::App* cmd : {eval, wf, cmp, qz})
        cmd->add_option("--config", "flat key=value config file (flags take precedence)")
            ->type_name("FILE");

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const pim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (eval->parsed()) return run_eval(eval_pot, eval_out, parse_grid(eval_grid));
        if (wf->parsed())
            return run_wavefunction(wf_pot, wf_out, parse_grid(wf_grid), wf_order,
                                    wf_anchor, wf_abs, wf_rel);
        if (cmp->parsed()) return run_compare(cmp_pot, cmp_out, cmp_anchor, cmp_probe, cmp_tol);
        if (ver->parsed()) return run_verify(ver_corpus, ver_checks);
        if (qz->parsed())
            return run_quantize(qz_out, qz_Z, qz_l, qz_nr, qz_s, qz_preset, qz_bracket);
        if (pc->parsed())
            return run_parse_check(pc_expr, pc_params,
                                   pc_at_opt->count() ? std::optional<double>(pc_at)
                                                      : std::nullopt);
    } catch (const pim::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const pim::GuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBreakdown;
    } catch (const pim::BreakdownError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBreakdown;
    } catch (const pim::QuadratureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBreakdown;
    } catch (const pim::OdeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBreakdown;
    } catch (const pim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
