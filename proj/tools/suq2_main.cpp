#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <suq2/suite.hpp>

namespace {

using namespace suq2;

HalfInt parse_nmax(double v)
{
    const double doubled = 2.0 * v;
    const long rounded = std::lround(doubled);
    if (v < 0.0 || std::abs(doubled - static_cast<double>(rounded)) > 1e-9)
        throw CLI::ValidationError("--nmax", "must be a non-negative multiple of 1/2");
    return HalfInt::halves(static_cast<int>(rounded));
}

std::map<std::string, double> parse_tols(const std::vector<std::string>& specs)
{
    std::map<std::string, double> out;
    for (const std::string& s : specs) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            throw CLI::ValidationError("--tol", "expected name=value, got '" + s + "'");
        try {
            out[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--tol", "bad numeric value in '" + s + "'");
        }
    }
    return out;
}

std::filesystem::path resolve_out(const SuiteConfig& cfg, const std::string& out,
                                  const std::string& fallback_name)
{
    std::filesystem::path p;
    if (!out.empty())
        p = out;
    else if (!cfg.output_dir.empty())
        p = fallback_name;
    else
        return {};
    if (p.is_relative() && !cfg.output_dir.empty())
        p = std::filesystem::path(cfg.output_dir) / p;
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    return p;
}

void write_text(const std::filesystem::path& p, const std::string& body)
{
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << body;
}

void print_human(const SuiteReport& rep)
{
    for (const CheckResult& c : rep.checks) {
        std::string tag = status_name(c.status);
        for (char& ch : tag) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        std::printf("[%s] %-20s measured=%-12g bound=%-12g (%.2fs) %s\n", tag.c_str(),
                    c.name.c_str(), c.measured, c.bound, c.seconds, c.detail.c_str());
    }
    std::printf("%d pass, %d warn, %d fail, %d skipped; conventions %s\n",
                rep.count(CheckStatus::Pass), rep.count(CheckStatus::Warn),
                rep.count(CheckStatus::Fail), rep.count(CheckStatus::Skipped),
                convention_hash().c_str());
}

int emit_report(const SuiteReport& rep, const SuiteConfig& cfg, const std::string& format,
                const std::string& out)
{
    print_human(rep);
    const std::string fallback = format == "csv" ? "report.csv" : "report.json";
    const std::filesystem::path p = resolve_out(cfg, out, fallback);
    if (!p.empty()) {
        write_text(p, format == "csv" ? report_to_csv(rep) : canonical_report_json(rep));
        std::printf("report written to %s\n", p.string().c_str());
    }
    return rep.all_passed() ? 0 : 1;
}

OperatorMatrix named_operator(std::string name, std::string space, const SuiteConfig& cfg)
{
    // prefixed names select the space on their own
    if (name.rfind("pi_prime_", 0) == 0) {
        space = "direct-sum";
        name = name.substr(9);
    } else if (name.rfind("hat_", 0) == 0) {
        space = "gns";
        name = name.substr(4);
    }
    const Truncation t{cfg.nmax};
    static const std::map<std::string, Gen> gens{{"alpha", Gen::Alpha},
                                                 {"alpha_star", Gen::AlphaStar},
                                                 {"beta", Gen::Beta},
                                                 {"beta_star", Gen::BetaStar}};
    if (space == "gns") {
        const PWBasis b(t);
        if (name == "dirac") return model_matrix(dirac_standard(), b);
        return hat_generator(gens.at(name), b, cfg.q);
    }
    const DlssvBasis b(t);
    if (name == "dirac") return dirac_dlssv(b);
    return pi_prime(gens.at(name), b, cfg.q);
}

Json spectrum_json(const std::string& family, HalfInt nmax)
{
    Json levels = Json::array();
    for (int t = 0; t <= nmax.twice(); ++t) {
        std::vector<SpectralLine> lines;
        if (family == "direct-sum")
            lines = dlssv_level_lines(t);
        else if (family == "standard")
            lines = model_level_lines(dirac_standard(), t);
        else if (family == "offset")
            lines = model_level_lines(dirac_offset(), t);
        else
            lines = model_level_lines(dirac_probe(), t);
        Json jl = Json::array();
        for (const SpectralLine& l : lines)
            jl.push_back({{"eigenvalue", l.eigenvalue},
                          {"abs_eigenvalue", l.abs_eigenvalue},
                          {"multiplicity", l.multiplicity}});
        levels.push_back({{"level2", t}, {"lines", std::move(jl)}});
    }
    return Json{{"family", family},
                {"nmax2", nmax.twice()},
                {"conventions", convention_hash()},
                {"levels", std::move(levels)}};
}

std::string spectrum_csv(const std::string& family, HalfInt nmax)
{
    std::string out = "level2,eigenvalue,multiplicity\n";
    const Json j = spectrum_json(family, nmax);
    for (const auto& lev : j.at("levels"))
        for (const auto& l : lev.at("lines"))
            out += std::to_string(lev.at("level2").get<int>()) + "," +
                   format_double(l.at("eigenvalue").get<double>(), 12) + "," +
                   std::to_string(l.at("multiplicity").get<long>()) + "\n";
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"truncated operator models for the quantum SU(2) spectral triples"};
    app.require_subcommand(1);

    SuiteConfig cfg;
    apply_env(cfg);

    double q = cfg.q;
    double nmax_in = cfg.nmax.twice() / 2.0;
    std::vector<std::string> tol_specs, only;
    std::string format = "json", out, cache = cfg.cache_dir;
    std::string op_name, op_space = "gns", family = "standard", triple;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--q", q, "deformation parameter in (0, 1)");
        sub->add_option("--nmax", nmax_in, "spin truncation, multiple of 1/2");
        sub->add_option("--tol", tol_specs, "per-check bound override, name=value");
        sub->add_option("--format", format, "report format")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", out, "output file (joined with SUQ2_OUTPUT_DIR if relative)");
        sub->add_option("--cache", cache, "directory for the orthogonal-basis cache");
        sub->add_option("--seed", cfg.seed, "selects the planted defect in mutation checks");
    };

    CLI::App* check = app.add_subcommand("check", "run the verification suite");
    add_common(check);
    check->add_option("--only", only, "subset of checks to run")
        ->check(CLI::IsMember(check_names()));

    CLI::App* oracle =
        app.add_subcommand("oracle", "run only the exact-arithmetic cross checks");
    add_common(oracle);

    CLI::App* op = app.add_subcommand("op", "operator exports");
    op->require_subcommand(1);
    CLI::App* dump = op->add_subcommand("dump", "write one operator in coordinate text form");
    add_common(dump);
    dump->add_option("--name", op_name, "operator to export")
        ->required()
        ->check(CLI::IsMember({"alpha", "alpha_star", "beta", "beta_star", "dirac",
                               "hat_alpha", "hat_alpha_star", "hat_beta", "hat_beta_star",
                               "pi_prime_alpha", "pi_prime_alpha_star", "pi_prime_beta",
                               "pi_prime_beta_star"}));
    dump->add_option("--space", op_space, "representation space")
        ->check(CLI::IsMember({"gns", "direct-sum"}));

    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalue lines per level");
    add_common(spectrum);
    spectrum->add_option("--family", family, "eigenvalue family")
        ->check(CLI::IsMember({"standard", "offset", "probe", "direct-sum"}));
    spectrum->add_option("--triple", triple, "shorthand for the space: gns or dlssv")
        ->check(CLI::IsMember({"gns", "dlssv"}));

    CLI::App* index = app.add_subcommand("index", "pairing integer on both spaces");
    add_common(index);

    try {
        app.parse(argc, argv);
        if (q <= 0.0 || q >= 1.0)
            throw CLI::ValidationError("--q", "must lie strictly between 0 and 1");
        cfg.q = q;
        cfg.nmax = parse_nmax(nmax_in);
        cfg.oracle_nmax = std::min(cfg.oracle_nmax, cfg.nmax);
        cfg.tol = parse_tols(tol_specs);
        cfg.cache_dir = cache;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (check->parsed()) return emit_report(run_suite(cfg, only), cfg, format, out);

        if (oracle->parsed()) {
            const std::vector<std::string> subset{"oracle_agreement", "equivariance",
                                                  "haar_projection", "hopf_exactness"};
            return emit_report(run_suite(cfg, subset), cfg, format, out);
        }

        if (dump->parsed()) {
            const OperatorMatrix m = named_operator(op_name, op_space, cfg);
            std::ostringstream body;
            dump_matrix_market(body, m, op_name, cfg.q, cfg.precision);
            const std::filesystem::path p = resolve_out(cfg, out, op_name + ".mtx");
            if (p.empty())
                std::cout << body.str();
            else {
                write_text(p, body.str());
                std::printf("%s on %s written to %s (%ld nonzeros)\n", op_name.c_str(),
                            op_space.c_str(), p.string().c_str(), m.nonzeros());
            }
            return 0;
        }

        if (spectrum->parsed()) {
            if (triple == "dlssv") family = "direct-sum";
            const std::string body = format == "csv"
                                         ? spectrum_csv(family, cfg.nmax)
                                         : spectrum_json(family, cfg.nmax).dump(2) + "\n";
            const std::filesystem::path p = resolve_out(cfg, out, "spectrum." + format);
            if (p.empty())
                std::cout << body;
            else {
                write_text(p, body);
                std::printf("spectrum written to %s\n", p.string().c_str());
            }
            return 0;
        }

        if (index->parsed()) {
            CheckResult r = run_check("index_pairing", cfg);
            std::printf("[%s] pairing integer %g on both spaces (%.2fs)\n",
                        r.status == CheckStatus::Pass ? "PASS" : "FAIL", r.measured,
                        r.seconds);
            const std::filesystem::path p = resolve_out(cfg, out, "index.json");
            if (!p.empty()) {
                Json j = {{"tool", "suq2"},
                          {"conventions", convention_hash()},
                          {"check", r.name},
                          {"status", status_name(r.status)},
                          {"index", r.measured},
                          {"data", r.data}};
                write_text(p, j.dump(2) + "\n");
            }
            return r.status == CheckStatus::Pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
