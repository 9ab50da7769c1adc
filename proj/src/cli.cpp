#include "sspec/cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sspec/asympt.hpp"
#include "sspec/parallel.hpp"
#include "sspec/resolvent.hpp"
#include "sspec/spectrum.hpp"
#include "sspec/verify.hpp"
#include "sspec/zeta_heat.hpp"

namespace sspec::cli {

namespace {

const std::vector<std::string> commands = {"spectrum", "trace", "zeta", "poles", "heat", "asympt", "verify"};

const std::map<std::string, std::string> descriptions = {
    {"spectrum", "Eigenvalues: n, lambda_n; negative eigenvalue and zero mode in JSON"},
    {"trace", "Resolvent trace by closed form, kernel quadrature and spectral sum"},
    {"zeta", "Zeta function on an s-grid (contour continuation; spectral sum where it converges)"},
    {"poles", "Predicted poles and residues, optionally extracted numerically"},
    {"heat", "Heat trace and its difference from the D-extension; small-t expansion"},
    {"asympt", "Large-mu expansion of the resolvent trace"},
    {"verify", "Invariant suites, or the acceptance criteria with --acceptance"}};

template <class T>
void put_opt(nlohmann::json& j, const char* key, const std::optional<T>& v)
{
    if (v)
        j[key] = *v;
}

template <class T>
void get_opt(const nlohmann::json& j, const char* key, std::optional<T>& v)
{
    if (j.contains(key) && !j[key].is_null())
        v = j[key].get<T>();
}

} // namespace

nlohmann::json RunConfig::to_json() const
{
    nlohmann::json j = {{"command", command}, {"precision", precision}, {"output", output}};
    if (command != "verify") {
        j["g"] = g;
        put_opt(j, "alpha", alpha);
        put_opt(j, "beta", beta);
        put_opt(j, "rho", rho);
        put_opt(j, "theta", theta);
    }
    if (command == "spectrum")
        j["n"] = n;
    if (command == "trace") {
        j["lambda"] = lambda;
        j["lambda_im"] = lambda_im;
        j["n_explicit"] = n_explicit;
    }
    if (command == "zeta") {
        j["s_from"] = s_from;
        j["s_to"] = s_to;
        j["s_steps"] = s_steps;
        j["mode"] = mode;
        j["K"] = K;
        j["n_explicit"] = n_explicit;
    }
    if (command == "poles") {
        j["K"] = K;
        j["numeric"] = numeric;
        j["h"] = h;
    }
    if (command == "heat") {
        j["t"] = t;
        j["K"] = K;
        j["n_explicit"] = n_explicit;
    }
    if (command == "asympt") {
        j["K"] = K;
        j["sigma"] = sigma;
    }
    if (command == "verify") {
        j["acceptance"] = acceptance;
        j["criteria"] = criteria;
    }
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j)
{
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.precision = j.value("precision", c.precision);
    c.output = j.value("output", c.output);
    c.g = j.value("g", c.g);
    get_opt(j, "alpha", c.alpha);
    get_opt(j, "beta", c.beta);
    get_opt(j, "rho", c.rho);
    get_opt(j, "theta", c.theta);
    c.n = j.value("n", c.n);
    c.lambda = j.value("lambda", c.lambda);
    c.lambda_im = j.value("lambda_im", c.lambda_im);
    c.s_from = j.value("s_from", c.s_from);
    c.s_to = j.value("s_to", c.s_to);
    c.s_steps = j.value("s_steps", c.s_steps);
    c.mode = j.value("mode", c.mode);
    c.t = j.value("t", c.t);
    c.K = j.value("K", c.K);
    c.n_explicit = j.value("n_explicit", c.n_explicit);
    c.sigma = j.value("sigma", c.sigma);
    c.numeric = j.value("numeric", c.numeric);
    c.h = j.value("h", c.h);
    c.acceptance = j.value("acceptance", c.acceptance);
    c.criteria = j.value("criteria", c.criteria);
    return c;
}

void validate(const RunConfig& c)
{
    if (std::find(commands.begin(), commands.end(), c.command) == commands.end())
        throw DomainError(fmt::format("unknown command '{}'", c.command));
    if (c.precision != "double" && c.precision != "extended")
        throw DomainError("--precision must be double or extended");
    if (c.output != "json" && c.output != "csv" && !(c.command == "verify" && c.output == "text"))
        throw DomainError("--output must be json or csv (verify also accepts text)");
    if (c.command == "verify") {
        for (int id : c.criteria)
            if (id < 1 || id > verify::criterion_count)
                throw DomainError(fmt::format("no acceptance criterion {}", id));
        return;
    }
    extension(c);
    if (c.command == "spectrum" && (c.n < 1 || c.n > 100000))
        throw DomainError("--n must lie in 1..100000");
    if (c.command == "trace") {
        if (c.lambda.empty())
            throw DomainError("trace needs at least one --lambda");
        for (double l : c.lambda)
            if (!std::isfinite(l))
                throw DomainError("--lambda must be finite");
        if (c.n_explicit < 10)
            throw DomainError("--n-explicit must be at least 10");
    }
    if (c.command == "zeta") {
        if (c.s_steps < 1 || !std::isfinite(c.s_from) || !std::isfinite(c.s_to))
            throw DomainError("the s-grid needs finite ends and --s-steps >= 1");
        if (c.s_steps == 1 && c.s_from != c.s_to)
            throw DomainError("--s-steps 1 needs --s-from = --s-to");
        if (c.mode != "full" && c.mode != "difference")
            throw DomainError("--mode must be full or difference");
        if (c.K < 1 || c.K > 19)
            throw DomainError("--K (subtracted terms) must lie in 1..19");
    }
    if (c.command == "poles" && (c.K < 1 || c.K > 400 || !(c.h > 0.0)))
        throw DomainError("poles needs --K in 1..400 and --step > 0");
    if (c.command == "heat") {
        if (c.t.empty())
            throw DomainError("heat needs --t or a t-grid");
        for (double t : c.t)
            if (!(t > 0.0) || !std::isfinite(t))
                throw DomainError("heat times must be positive");
        if (c.K < 0 || c.n_explicit < 0)
            throw DomainError("--K and --n-explicit must be non-negative");
    }
    if (c.command == "asympt") {
        if (c.K < 1 || c.K > 20)
            throw DomainError("--K must lie in 1..20");
        if (c.sigma != 1 && c.sigma != -1)
            throw DomainError("--sigma must be 1 or -1");
    }
}

ExtensionParams extension(const RunConfig& c)
{
    const int given = (c.alpha || c.beta ? 1 : 0) + (c.rho ? 1 : 0) + (c.theta ? 1 : 0);
    if (given != 1)
        throw DomainError("give exactly one of --alpha/--beta, --rho, --theta");
    if (c.alpha || c.beta) {
        if (!c.alpha || !c.beta)
            throw DomainError("--alpha and --beta go together");
        return ExtensionParams::from_ab(c.g, *c.alpha, *c.beta);
    }
    if (c.theta) {
        if (c.g != 0.5)
            throw DomainError("--theta needs --g 0.5");
        return ExtensionParams::from_theta(*c.theta);
    }
    return ExtensionParams::from_rho(c.g, *c.rho);
}

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

nlohmann::json cjson(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

struct Csv {
    std::ostream& out;

    void row(const std::vector<std::string>& cells)
    {
        for (size_t i = 0; i < cells.size(); ++i)
            out << (i ? "," : "") << cells[i];
        out << '\n';
    }
};

void emit(const RunConfig& c, std::ostream& out, nlohmann::json result)
{
    nlohmann::json doc = {{"config", c.to_json()}, {"result", std::move(result)}};
    out << doc.dump(2) << '\n';
}

int cmd_spectrum(const RunConfig& c, std::ostream& out)
{
    EigenvalueTable t = eigenvalues(extension(c), c.n);
    if (c.output == "csv") {
        Csv w{out};
        w.row({"n", "lambda"});
        for (const auto& e : t.entries)
            w.row({std::to_string(e.index), num(e.lambda)});
        return ok;
    }
    nlohmann::json ev = nlohmann::json::array();
    for (const auto& e : t.entries)
        ev.push_back({{"n", e.index}, {"lambda", e.lambda}});
    nlohmann::json r = {{"extension", t.ext.describe()}, {"zero_mode", t.zero_mode}, {"eigenvalues", ev}};
    r["negative"] = t.negative ? nlohmann::json(*t.negative) : nlohmann::json(nullptr);
    emit(c, out, r);
    return ok;
}

int cmd_trace(const RunConfig& c, std::ostream& out)
{
    const ExtensionParams ext = extension(c);
    EigenvalueTable table = eigenvalues(ext, c.n_explicit);
    struct Row {
        cplx lambda;
        std::optional<cplx> closed, quadrature, spectral;
    };
    std::vector<Row> rows;
    for (double l : c.lambda) {
        Row r{cplx(l, c.lambda_im), {}, {}, {}};
        auto p = SpectralPoint::from_lambda(r.lambda);
        r.closed = resolvent::trace_closed(ext, p).trace;
        r.spectral = resolvent::trace_spectral(table, p).trace;
        // the kernel quadrature is limited to |mu| <= 20
        if (std::abs(p.mu) <= 20.0)
            r.quadrature = resolvent::trace_quadrature(ext, p).trace;
        rows.push_back(r);
    }
    if (c.output == "csv") {
        Csv w{out};
        w.row({"lambda_re", "lambda_im", "closed_re", "closed_im", "quadrature_re", "quadrature_im", "spectral_re",
               "spectral_im"});
        auto pair = [](const std::optional<cplx>& z) -> std::vector<std::string> {
            if (!z)
                return {"nan", "nan"};
            return {num(z->real()), num(z->imag())};
        };
        for (const auto& r : rows) {
            std::vector<std::string> cells = {num(r.lambda.real()), num(r.lambda.imag())};
            for (const auto& z : {r.closed, r.quadrature, r.spectral}) {
                auto p = pair(z);
                cells.insert(cells.end(), p.begin(), p.end());
            }
            w.row(cells);
        }
        return ok;
    }
    nlohmann::json a = nlohmann::json::array();
    auto opt = [](const std::optional<cplx>& z) { return z ? cjson(*z) : nlohmann::json(nullptr); };
    for (const auto& r : rows)
        a.push_back({{"lambda", cjson(r.lambda)},
                     {"closed", opt(r.closed)},
                     {"quadrature", opt(r.quadrature)},
                     {"spectral", opt(r.spectral)}});
    emit(c, out, {{"extension", ext.describe()}, {"traces", a}});
    return ok;
}

int cmd_zeta(const RunConfig& c, std::ostream& out)
{
    const ExtensionParams ext = extension(c);
    zeta_heat::ZetaOptions o;
    o.n_subtract = c.K;
    o.mode = c.mode == "difference" ? zeta_heat::ZetaMode::difference : zeta_heat::ZetaMode::full;
    std::vector<double> ss(c.s_steps);
    for (int i = 0; i < c.s_steps; ++i)
        ss[i] = c.s_steps == 1 ? c.s_from : c.s_from + (c.s_to - c.s_from) * i / (c.s_steps - 1);
    std::vector<zeta_heat::ZetaIntegral> zi(ss.size());
    std::vector<std::optional<cplx>> zs(ss.size());
    // independent grid points; each slot written once
    parallel_for(ss.size(), [&](size_t i) {
        zi[i] = zeta_heat::zeta_integral(ext, ss[i], o);
        if (o.mode == zeta_heat::ZetaMode::full && ss[i] >= 0.51)
            zs[i] = zeta_heat::zeta_sum(ext, ss[i], c.n_explicit).value;
    });
    if (c.output == "csv") {
        Csv w{out};
        w.row({"s", "zeta_re", "zeta_im", "error", "sum_re", "sum_im"});
        for (size_t i = 0; i < ss.size(); ++i)
            w.row({num(ss[i]), num(zi[i].value.real()), num(zi[i].value.imag()), num(zi[i].error),
                   zs[i] ? num(zs[i]->real()) : "nan", zs[i] ? num(zs[i]->imag()) : "nan"});
        return ok;
    }
    nlohmann::json a = nlohmann::json::array();
    for (size_t i = 0; i < ss.size(); ++i)
        a.push_back({{"s", ss[i]},
                     {"zeta", cjson(zi[i].value)},
                     {"error", zi[i].error},
                     {"sum", zs[i] ? cjson(*zs[i]) : nlohmann::json(nullptr)}});
    emit(c, out, {{"extension", ext.describe()}, {"values", a}});
    return ok;
}

int cmd_poles(const RunConfig& c, std::ostream& out)
{
    const ExtensionParams ext = extension(c);
    std::vector<zeta_heat::PoleReport> table = zeta_heat::pole_table(ext, c.K);
    std::vector<std::optional<zeta_heat::PoleReport>> numeric(table.size());
    std::vector<std::string> why(table.size());
    if (c.numeric) {
        parallel_for(table.size(), [&](size_t i) {
            zeta_heat::ZetaOptions o;
            // anomalous residues from zeta_ext - zeta_D, where the regular family is absent
            if (table[i].kind == zeta_heat::PoleKind::anomalous)
                o.mode = zeta_heat::ZetaMode::difference;
            try {
                numeric[i] = zeta_heat::residue_numeric(ext, table[i].s0, o, c.h);
            } catch (const std::exception& e) {
                why[i] = e.what();
            }
        });
    }
    if (c.output == "csv") {
        Csv w{out};
        w.row({"s0", "residue", "kind", "k", "numeric_residue", "numeric_error"});
        for (size_t i = 0; i < table.size(); ++i) {
            const auto& p = table[i];
            w.row({num(p.s0), num(p.residue), zeta_heat::kind_name(p.kind), std::to_string(p.k),
                   numeric[i] ? num(numeric[i]->residue) : "nan", numeric[i] ? num(numeric[i]->error) : "nan"});
        }
        return ok;
    }
    nlohmann::json a = nlohmann::json::array();
    for (size_t i = 0; i < table.size(); ++i) {
        nlohmann::json p = table[i].to_json();
        if (c.numeric) {
            p["numeric"] = numeric[i] ? numeric[i]->to_json() : nlohmann::json(nullptr);
            if (!numeric[i])
                p["numeric_refused"] = why[i];
        }
        a.push_back(p);
    }
    emit(c, out, {{"extension", ext.describe()}, {"poles", a}});
    return ok;
}

int cmd_heat(const RunConfig& c, std::ostream& out)
{
    const ExtensionParams ext = extension(c);
    struct Row {
        double t;
        zeta_heat::HeatTrace trace;
        double difference;
    };
    std::vector<Row> rows;
    for (double t : c.t) {
        auto h = zeta_heat::heat_trace(ext, t, c.n_explicit);
        auto d = zeta_heat::heat_trace(ExtensionParams::dirichlet(ext.g()), t, c.n_explicit);
        rows.push_back({t, h, h.value - d.value});
    }
    if (c.output == "csv") {
        Csv w{out};
        w.row({"t", "trace", "difference", "n_explicit", "zero_mode"});
        for (const auto& r : rows)
            w.row({num(r.t), num(r.trace.value), num(r.difference), std::to_string(r.trace.n_explicit),
                   r.trace.zero_mode ? "1" : "0"});
        return ok;
    }
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : rows)
        a.push_back({{"t", r.t},
                     {"trace", r.trace.value},
                     {"difference", r.difference},
                     {"n_explicit", r.trace.n_explicit},
                     {"zero_mode", r.trace.zero_mode}});
    nlohmann::json res = {{"extension", ext.describe()}, {"traces", a}};
    if (c.K > 0 && !ext.is_half() && !ext.is_dirichlet())
        res["expansion"] = zeta_heat::heat_expansion(ext, c.K).to_json();
    emit(c, out, res);
    return ok;
}

int cmd_asympt(const RunConfig& c, std::ostream& out)
{
    const ExtensionParams ext = extension(c);
    // at g = 1/2 every extension shares the D-expansion
    asympt::GenPowerSeries s = ext.is_half() ? asympt::trace_d_coefficients(0.5, c.sigma, c.K).series()
                                             : asympt::general_trace_series(ext, c.sigma, c.K);
    if (c.output == "csv") {
        Csv w{out};
        w.row({"exponent", "re", "im"});
        for (const auto& t : s.terms())
            w.row({num(t.exponent), num(t.coefficient.real()), num(t.coefficient.imag())});
        return ok;
    }
    emit(c, out, {{"extension", ext.describe()}, {"truncation_order", s.truncation_order()}, {"series", s.to_json()}});
    return ok;
}

int cmd_verify(const RunConfig& c, std::ostream& out)
{
    std::vector<verify::Suite> suites;
    if (c.acceptance) {
        std::vector<int> ids = c.criteria;
        if (ids.empty())
            for (int i = 1; i <= verify::criterion_count; ++i)
                ids.push_back(i);
        for (int id : ids) {
            suites.push_back(verify::criterion(id));
            suites.back().name = fmt::format("criterion {}: {}", id, suites.back().name);
        }
    } else {
        suites = verify::invariant_suites();
    }
    bool all = true;
    for (const auto& s : suites)
        all = all && s.pass();
    if (c.output == "json") {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& s : suites)
            a.push_back(s.to_json());
        emit(c, out, {{"pass", all}, {"suites", a}});
    } else if (c.output == "csv") {
        Csv w{out};
        w.row({"suite", "check", "measured", "tolerance", "pass"});
        auto quote = [](const std::string& v) { return "\"" + v + "\""; };
        for (const auto& s : suites)
            for (const auto& k : s.checks)
                w.row({quote(s.name), quote(k.name), num(k.measured), num(k.tolerance), k.pass ? "1" : "0"});
    } else {
        for (const auto& s : suites) {
            out << (s.pass() ? "PASS " : "FAIL ") << s.name << '\n';
            for (const auto& k : s.checks)
                out << fmt::format("  {} {}: {:.3g} (tolerance {:.3g})\n", k.pass ? "ok  " : "FAIL", k.name,
                                   k.measured, k.tolerance);
        }
    }
    return all ? ok : numerical_error;
}

} // namespace

int execute(const RunConfig& c, std::ostream& out)
{
    validate(c);
    if (c.command == "spectrum")
        return cmd_spectrum(c, out);
    if (c.command == "trace")
        return cmd_trace(c, out);
    if (c.command == "zeta")
        return cmd_zeta(c, out);
    if (c.command == "poles")
        return cmd_poles(c, out);
    if (c.command == "heat")
        return cmd_heat(c, out);
    if (c.command == "asympt")
        return cmd_asympt(c, out);
    return cmd_verify(c, out);
}

namespace {

// per-command defaults; extended precision raises the truncation parameters
void resolve_defaults(RunConfig& c, bool k_given, bool n_given)
{
    const bool ext = c.precision == "extended";
    if (!k_given) {
        if (c.command == "zeta")
            c.K = ext ? 12 : 8;
        else if (c.command == "poles" || c.command == "heat")
            c.K = 4;
        else if (c.command == "asympt")
            c.K = 6;
    }
    if (!n_given && (c.command == "trace" || c.command == "zeta"))
        c.n_explicit = ext ? 8000 : 2000;
}

bool given(CLI::App* s, const std::string& name)
{
    const CLI::Option* o = s->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
}

std::vector<double> log_grid(double a, double b, int n)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = n == 1 ? a : a * std::pow(b / a, double(i) / (n - 1));
    return v;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spectra, resolvent traces, zeta functions and heat traces of -d^2/dx^2 + g(g-1)/x^2 on (0,1)"};
    app.set_help_all_flag("--help-all");
    std::string replay;
    int threads = 0;
    app.add_option("--replay", replay, "Re-run the config stored in a JSON report");
    app.add_option("--threads", threads, "Worker threads (default SSPEC_THREADS, else 1)")->check(CLI::Range(1, 256));

    RunConfig c;
    double alpha = 0, beta = 0, rho_v = 0, theta = 0;
    double t_from = 0, t_to = 0;
    int t_steps = 0;
    std::vector<double> t_list;
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : commands) {
        CLI::App* s = app.add_subcommand(name, descriptions.at(name));
        subs[name] = s;
        s->add_option("--output", c.output, "json | csv" + std::string(name == "verify" ? " | text" : ""));
        s->add_option("--precision", c.precision, "double | extended");
        s->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256));
        if (name == "verify") {
            s->add_flag("--acceptance", c.acceptance, "Run the acceptance criteria instead of the invariant suites");
            s->add_option("--criterion", c.criteria, "Acceptance criteria to run (1..9)");
            continue;
        }
        s->add_option("--g", c.g, "Coupling g in [1/2, 3/2)")->required();
        s->add_option("--alpha", alpha);
        s->add_option("--beta", beta);
        s->add_option("--rho", rho_v);
        s->add_option("--theta", theta, "g = 1/2 only");
        if (name == "spectrum")
            s->add_option("--n", c.n, "Number of positive eigenvalues");
        if (name == "trace") {
            s->add_option("--lambda", c.lambda, "Spectral parameter (repeatable)");
            s->add_option("--lambda-im", c.lambda_im, "Imaginary part added to every lambda");
        }
        if (name == "zeta") {
            s->add_option("--s-from", c.s_from);
            s->add_option("--s-to", c.s_to);
            s->add_option("--s-steps", c.s_steps);
            s->add_option("--mode", c.mode, "full | difference");
        }
        if (name == "poles") {
            s->add_flag("--numeric", c.numeric, "Add Richardson-extrapolated residues");
            s->add_option("--step", c.h, "Richardson step h");
        }
        if (name == "heat") {
            s->add_option("--t", t_list, "Time (repeatable)");
            s->add_option("--t-from", t_from);
            s->add_option("--t-to", t_to);
            s->add_option("--t-steps", t_steps, "Log-spaced grid size");
        }
        if (name == "asympt")
            s->add_option("--sigma", c.sigma, "Half plane of mu: 1 or -1");
        if (name == "zeta" || name == "poles" || name == "heat" || name == "asympt")
            s->add_option("--K", c.K, "Terms: subtracted A_k (zeta), poles per family, expansion terms");
        if (name == "trace" || name == "zeta" || name == "heat")
            s->add_option("--n-explicit", c.n_explicit, "Explicit eigenvalues before the tail");
    }
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return validation_error;
    }

    try {
        if (threads > 0)
            set_thread_count(threads);
        if (!replay.empty()) {
            if (!app.get_subcommands().empty())
                throw DomainError("--replay takes no subcommand");
            std::ifstream f(replay);
            if (!f)
                throw DomainError("cannot read " + replay);
            nlohmann::json doc = nlohmann::json::parse(f);
            c = RunConfig::from_json(doc.contains("config") ? doc["config"] : doc);
        } else {
            if (app.get_subcommands().empty()) {
                err << app.help();
                return validation_error;
            }
            CLI::App* s = app.get_subcommands().front();
            c.command = s->get_name();
            if (c.command != "verify") {
                if (given(s, "--alpha"))
                    c.alpha = alpha;
                if (given(s, "--beta"))
                    c.beta = beta;
                if (given(s, "--rho"))
                    c.rho = rho_v;
                if (given(s, "--theta"))
                    c.theta = theta;
            }
            if (c.command == "verify" && !given(s, "--output"))
                c.output = "text";
            if (c.command == "trace" && c.lambda.empty())
                c.lambda = {-1.0, -10.0, -100.0};
            if (c.command == "heat") {
                c.t = t_list;
                if (given(s, "--t-steps") || given(s, "--t-from") || given(s, "--t-to")) {
                    if (!(t_from > 0.0) || !(t_to >= t_from) || t_steps < 1)
                        throw DomainError("the t-grid needs 0 < --t-from <= --t-to and --t-steps >= 1");
                    auto g = log_grid(t_from, t_to, t_steps);
                    c.t.insert(c.t.end(), g.begin(), g.end());
                }
            }
            resolve_defaults(c, c.command != "verify" && given(s, "--K"),
                             c.command != "verify" && given(s, "--n-explicit"));
        }
        return execute(c, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return validation_error;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return validation_error;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return numerical_error;
    }
}

} // namespace sspec::cli
