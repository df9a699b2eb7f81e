// Command-line front end for the dual-approximation experiment library.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dda/config.hpp"
#include "dda/dimension.hpp"
#include "dda/errors.hpp"
#include "dda/groshev.hpp"
#include "dda/lattice.hpp"
#include "dda/measure.hpp"
#include "dda/transference.hpp"
#include "dda/ubiquity.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using dda::ConfigDoc;
using dda::ConfigValue;

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<double> parse_reals(const std::string& csv) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= csv.size()) {
        const size_t comma = csv.find(',', pos);
        const std::string tok = csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (tok.empty()) throw dda::input_error("empty entry in list '" + csv + "'");
        size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw dda::input_error("malformed number '" + tok + "'");
        }
        if (used != tok.size()) throw dda::input_error("malformed number '" + tok + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<long long> parse_ints(const std::string& csv) {
    std::vector<long long> out;
    for (double v : parse_reals(csv)) out.push_back(std::llround(v));
    return out;
}

ConfigValue num_value(double x) {
    ConfigValue v;
    v.kind = ConfigValue::Kind::Number;
    v.number = x;
    return v;
}

ConfigValue list_value(const std::vector<double>& xs) {
    ConfigValue v;
    v.kind = ConfigValue::Kind::List;
    v.list = xs;
    return v;
}

// Resolves per-key settings: an explicitly passed flag wins over the config
// file, which wins over the built-in default.  Everything that influenced the
// run ends up in `resolved`, which is hashed into the output file names.
struct Settings {
    ConfigDoc file;
    ConfigDoc resolved;

    std::string expr(const CLI::Option* opt, const std::string& key,
                     const std::string& flag_text) {
        if ((!opt || opt->count() == 0) && file.count(key)) {
            resolved[key] = file.at(key);
            std::string s;
            s = dda::canonical_config({{key, file.at(key)}});
            // canonical form is "key=value\n": strip the frame
            return s.substr(key.size() + 1, s.size() - key.size() - 2);
        }
        resolved[key] = dda::parse_config_value(flag_text);
        return flag_text;
    }

    double num(const CLI::Option* opt, const std::string& key, double flag_value) {
        double v = flag_value;
        if ((!opt || opt->count() == 0) && file.count(key) &&
            file.at(key).kind == ConfigValue::Kind::Number)
            v = file.at(key).number;
        resolved[key] = num_value(v);
        return v;
    }

    std::vector<double> reals(const CLI::Option* opt, const std::string& key,
                              const std::string& flag_text) {
        std::vector<double> v;
        if ((!opt || opt->count() == 0) && file.count(key) &&
            file.at(key).kind == ConfigValue::Kind::List)
            v = file.at(key).list;
        else
            v = parse_reals(flag_text);
        resolved[key] = list_value(v);
        return v;
    }
};

struct Emitter {
    std::string out_dir;
    std::string command;
    std::string hash;

    std::string base() const { return out_dir + "/" + command + "-" + hash; }

    void json(const nlohmann::json& result, const std::string& canonical) const {
        nlohmann::json doc;
        doc["version"] = kVersion;
        doc["config_hash"] = hash;
        doc["config"] = canonical;
        doc["result"] = result;
        const std::string path = base() + ".json";
        FILE* f = std::fopen(path.c_str(), "wb");
        if (!f) throw dda::input_error("cannot open output file " + path);
        const std::string body = doc.dump(2);
        std::fwrite(body.data(), 1, body.size(), f);
        std::fputc('\n', f);
        std::fclose(f);
        std::printf("%s\n", path.c_str());
    }

    void csv(const std::string& header, const std::vector<std::string>& rows) const {
        const std::string path = base() + ".csv";
        FILE* f = std::fopen(path.c_str(), "wb");
        if (!f) throw dda::input_error("cannot open output file " + path);
        std::fprintf(f, "# dda %s config=%s\n", kVersion, hash.c_str());
        std::fprintf(f, "%s\n", header.c_str());
        for (const auto& r : rows) std::fprintf(f, "%s\n", r.c_str());
        std::fclose(f);
        std::printf("%s\n", path.c_str());
    }
};

Emitter make_emitter(const std::string& out_dir, const std::string& command,
                     Settings& settings) {
    settings.resolved["command"] = dda::parse_config_value(command);
    return Emitter{out_dir, command, dda::config_hash(dda::canonical_config(settings.resolved))};
}

int dispatch(int argc, char** argv) {
    CLI::App app{"dual approximation experiment toolkit"};
    app.require_subcommand(1);

    std::string out_dir = ".";
    std::string config_path;
    int workers = 1;
    unsigned long long seed = 1;
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--config", config_path, "configuration file");
    app.add_option("--workers", workers, "worker threads");
    app.add_option("--seed", seed, "random seed");

    // ---- enumerate ----
    auto* c_enum = app.add_subcommand("enumerate", "integer vectors under a height bound");
    int en_n = 2;
    std::string en_v;
    double en_Q = 2.0;
    bool en_count_only = false;
    auto* o_en_n = c_enum->add_option("--n", en_n);
    auto* o_en_v = c_enum->add_option("--v", en_v, "weights, comma separated");
    auto* o_en_Q = c_enum->add_option("--Q", en_Q);
    c_enum->add_flag("--count-only", en_count_only);

    // ---- witness ----
    auto* c_wit = app.add_subcommand("witness", "witnesses in a height block");
    std::string w_x = "0.5", w_manifold = "veronese(n=2)", w_theta = "zero",
                w_psi = "power(tau=3)", w_v;
    double w_Hlo = 0.5, w_Hhi = 8.0;
    auto* o_w_x = c_wit->add_option("--x", w_x);
    auto* o_w_m = c_wit->add_option("--manifold", w_manifold);
    auto* o_w_t = c_wit->add_option("--theta", w_theta);
    auto* o_w_p = c_wit->add_option("--psi", w_psi);
    auto* o_w_v = c_wit->add_option("--v", w_v);
    auto* o_w_lo = c_wit->add_option("--H-lo", w_Hlo);
    auto* o_w_hi = c_wit->add_option("--H-hi", w_Hhi);

    // ---- dirichlet ----
    auto* c_dir = app.add_subcommand("dirichlet", "Dirichlet-set membership");
    std::string d_x = "0.5", d_manifold = "veronese(n=2)", d_v;
    double d_Q = 8.0, d_delta = 0.5;
    auto* o_d_x = c_dir->add_option("--x", d_x);
    auto* o_d_m = c_dir->add_option("--manifold", d_manifold);
    auto* o_d_v = c_dir->add_option("--v", d_v);
    auto* o_d_Q = c_dir->add_option("--Q", d_Q);
    auto* o_d_de = c_dir->add_option("--delta", d_delta);

    // ---- groshev ----
    auto* c_gro = app.add_subcommand("groshev", "convergence / divergence criteria");
    int g_m = 1, g_n = 2;
    double g_tau = 3.0, g_s = -1.0, g_scale = 1.0;
    bool g_critical = false;
    auto* o_g_m = c_gro->add_option("--m", g_m);
    auto* o_g_n = c_gro->add_option("--n", g_n);
    auto* o_g_tau = c_gro->add_option("--tau", g_tau);
    auto* o_g_s = c_gro->add_option("--s", g_s, "dimension parameter for divergence");
    auto* o_g_sc = c_gro->add_option("--scale", g_scale);
    c_gro->add_flag("--critical", g_critical, "print the critical exponent");

    // ---- dichotomy ----
    auto* c_dic = app.add_subcommand("dichotomy", "approximable-fraction trends");
    std::string di_manifold = "identity(n=2)", di_theta = "zero", di_taus = "1.5,3",
                di_H = "8,16,32,64", di_mode = "cumulative", di_v;
    long long di_N = 2000;
    auto* o_di_m = c_dic->add_option("--manifold", di_manifold);
    auto* o_di_t = c_dic->add_option("--theta", di_theta);
    auto* o_di_taus = c_dic->add_option("--taus", di_taus);
    auto* o_di_H = c_dic->add_option("--H", di_H);
    auto* o_di_v = c_dic->add_option("--v", di_v);
    auto* o_di_N = c_dic->add_option("--N", di_N);
    c_dic->add_option("--mode", di_mode)->check(CLI::IsMember({"cumulative", "tail"}));

    // ---- good ----
    auto* c_good = app.add_subcommand("good", "(C, alpha)-good sublevel test");
    std::string go_coeffs = "0,1", go_eps = "0.5,0.25,0.1,0.05,0.01";
    double go_C = 1.0, go_alpha = 1.0, go_lo = -1.0, go_hi = 1.0;
    int go_grid = 1 << 12;
    auto* o_go_c = c_good->add_option("--coeffs", go_coeffs, "polynomial g coefficients");
    auto* o_go_C = c_good->add_option("--C", go_C);
    auto* o_go_a = c_good->add_option("--alpha", go_alpha);
    auto* o_go_e = c_good->add_option("--eps", go_eps);
    c_good->add_option("--lo", go_lo);
    c_good->add_option("--hi", go_hi);
    c_good->add_option("--grid", go_grid);

    // ---- nice ----
    auto* c_nice = app.add_subcommand("nice", "Dirichlet-set density over a Q schedule");
    std::string ni_manifold = "veronese(n=2)", ni_Q = "4,8,16", ni_v;
    double ni_delta = 0.5, ni_C = 2.0;
    long long ni_N = 2000;
    auto* o_ni_m = c_nice->add_option("--manifold", ni_manifold);
    auto* o_ni_Q = c_nice->add_option("--Q", ni_Q);
    auto* o_ni_v = c_nice->add_option("--v", ni_v);
    auto* o_ni_d = c_nice->add_option("--delta", ni_delta);
    auto* o_ni_C = c_nice->add_option("--C", ni_C);
    auto* o_ni_N = c_nice->add_option("--N", ni_N);

    // ---- bkm ----
    auto* c_bkm = app.add_subcommand("bkm", "sublevel measure bound for a fixed form");
    std::string bk_manifold = "veronese(n=2)", bk_theta = "zero", bk_a = "3,1";
    double bk_delta = 0.1;
    int bk_grid = 1 << 12;
    bool bk_nograd = false;
    auto* o_bk_m = c_bkm->add_option("--manifold", bk_manifold);
    auto* o_bk_t = c_bkm->add_option("--theta", bk_theta);
    auto* o_bk_a = c_bkm->add_option("--a", bk_a);
    auto* o_bk_d = c_bkm->add_option("--delta", bk_delta);
    c_bkm->add_option("--grid", bk_grid);
    c_bkm->add_flag("--no-gradient", bk_nograd, "drop the gradient threshold");

    // ---- transfer ----
    auto* c_tra = app.add_subcommand("transfer", "intersection property verifier");
    std::string tr_manifold = "veronese(n=2)", tr_theta = "zero", tr_t = "1,3";
    double tr_delta = 0.1;
    long long tr_trials = 10000;
    auto* o_tr_m = c_tra->add_option("--manifold", tr_manifold);
    auto* o_tr_th = c_tra->add_option("--theta", tr_theta);
    auto* o_tr_t = c_tra->add_option("--t", tr_t);
    auto* o_tr_d = c_tra->add_option("--delta", tr_delta);
    auto* o_tr_n = c_tra->add_option("--trials", tr_trials);

    // ---- ubiquity ----
    auto* c_ubi = app.add_subcommand("ubiquity", "resonant trimming and covering checks");
    std::string ub_manifold = "veronese(n=2)", ub_theta = "zero", ub_a = "2,0",
                ub_mode = "conditions", ub_v;
    long long ub_a0 = -1;
    double ub_p = 0.1, ub_rho = 0.05, ub_rho_t = 0.04, ub_delta = 0.5, ub_omega = 0.0;
    int ub_fibers = 1024, ub_t = 4;
    long long ub_N = 200;
    bool ub_untrimmed = false;
    auto* o_ub_m = c_ubi->add_option("--manifold", ub_manifold);
    auto* o_ub_th = c_ubi->add_option("--theta", ub_theta);
    auto* o_ub_a = c_ubi->add_option("--a", ub_a);
    auto* o_ub_a0 = c_ubi->add_option("--a0", ub_a0);
    auto* o_ub_v = c_ubi->add_option("--v", ub_v);
    c_ubi->add_option("--mode", ub_mode)->check(CLI::IsMember({"conditions", "covering"}));
    c_ubi->add_option("--p", ub_p);
    c_ubi->add_option("--rho", ub_rho);
    c_ubi->add_option("--rho-t", ub_rho_t);
    c_ubi->add_option("--fibers", ub_fibers);
    c_ubi->add_option("--t", ub_t);
    c_ubi->add_option("--N", ub_N);
    c_ubi->add_option("--delta", ub_delta);
    c_ubi->add_option("--omega", ub_omega);
    c_ubi->add_flag("--untrimmed", ub_untrimmed);

    // ---- dimension ----
    auto* c_dim = app.add_subcommand("dimension", "box dimension of truncated sets");
    std::string dm_manifold = "veronese(n=2)", dm_theta = "zero", dm_v;
    double dm_tau = 5.0, dm_scale = 0.1, dm_Hcap = 1024.0;
    int dm_kmin = 4, dm_kmax = 12;
    auto* o_dm_m = c_dim->add_option("--manifold", dm_manifold);
    auto* o_dm_t = c_dim->add_option("--theta", dm_theta);
    auto* o_dm_v = c_dim->add_option("--v", dm_v);
    auto* o_dm_tau = c_dim->add_option("--tau", dm_tau);
    auto* o_dm_sc = c_dim->add_option("--scale", dm_scale);
    auto* o_dm_H = c_dim->add_option("--H-cap", dm_Hcap);
    c_dim->add_option("--k-min", dm_kmin);
    c_dim->add_option("--k-max", dm_kmax);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message and usage hint
        return 2;
    }

    Settings st;
    if (!config_path.empty()) {
        FILE* f = std::fopen(config_path.c_str(), "rb");
        if (!f) throw dda::input_error("cannot read config file " + config_path);
        std::string text;
        char buf[4096];
        size_t got;
        while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, got);
        std::fclose(f);
        st.file = dda::parse_config(text);
    }
    st.resolved["seed"] = num_value(double(seed));

    auto weights_for = [&](const CLI::Option* opt, const std::string& text, int n) {
        std::vector<double> w;
        if (opt->count() > 0)
            w = parse_reals(text);
        else if (st.file.count("v") && st.file.at("v").kind == ConfigValue::Kind::List)
            w = st.file.at("v").list;
        else
            w.assign(n, 1.0);
        st.resolved["v"] = list_value(w);
        return dda::QuasinormWeights(w);
    };

    if (*c_enum) {
        const int n = int(st.num(o_en_n, "n", en_n));
        const double Q = st.num(o_en_Q, "Q", en_Q);
        auto v = weights_for(o_en_v, en_v, n);
        if (v.n() != n) throw dda::input_error("weights length does not match n");
        auto tuples = dda::enumerate_heights(Q, v);
        if (en_count_only) {
            std::printf("%lld\n", static_cast<long long>(tuples.size()));
            return 0;
        }
        auto em = make_emitter(out_dir, "enumerate", st);
        std::string header;
        for (int i = 1; i <= n; ++i) header += "a" + std::to_string(i) + ",";
        header += "height";
        std::vector<std::string> rows;
        for (const auto& a : tuples) {
            std::string r;
            for (long long c : a) r += std::to_string(c) + ",";
            r += format_real(dda::eval_quasinorm(std::span<const long long>(a), v));
            rows.push_back(std::move(r));
        }
        em.csv(header, rows);
        return 0;
    }

    if (*c_wit) {
        auto M = dda::make_manifold(dda::parse_config_value(st.expr(o_w_m, "manifold", w_manifold)));
        auto theta = dda::make_shift(dda::parse_config_value(st.expr(o_w_t, "theta", w_theta)));
        auto psi = dda::make_psi(dda::parse_config_value(st.expr(o_w_p, "psi", w_psi)));
        auto v = weights_for(o_w_v, w_v, M.n());
        auto x = st.reals(o_w_x, "x", w_x);
        const double Hlo = st.num(o_w_lo, "H_lo", w_Hlo);
        const double Hhi = st.num(o_w_hi, "H_hi", w_Hhi);
        dda::MultivariableApproxFunction Psi(psi, v);
        auto ws = dda::witnesses_in_block(x, M, theta, Psi, Hlo, Hhi);
        auto em = make_emitter(out_dir, "witness", st);
        std::string header;
        for (int i = 1; i <= M.n(); ++i) header += "a" + std::to_string(i) + ",";
        header += "a0,err,height";
        std::vector<std::string> rows;
        for (const auto& w : ws) {
            std::string r;
            for (long long c : w.a) r += std::to_string(c) + ",";
            r += std::to_string(w.a0) + "," + format_real(w.err) + "," + format_real(w.height);
            rows.push_back(std::move(r));
        }
        em.csv(header, rows);
        return 0;
    }

    if (*c_dir) {
        auto M = dda::make_manifold(dda::parse_config_value(st.expr(o_d_m, "manifold", d_manifold)));
        auto v = weights_for(o_d_v, d_v, M.n());
        auto x = st.reals(o_d_x, "x", d_x);
        const double Q = st.num(o_d_Q, "Q", d_Q);
        const double delta = st.num(o_d_de, "delta", d_delta);
        auto res = dda::dirichlet_member(x, M, Q, delta, v);
        auto em = make_emitter(out_dir, "dirichlet", st);
        nlohmann::json j;
        j["member"] = res.member;
        if (res.witness) {
            j["witness"]["a"] = res.witness->a;
            j["witness"]["a0"] = res.witness->a0;
            j["witness"]["err"] = res.witness->err;
        }
        em.json(j, dda::canonical_config(st.resolved));
        return 0;
    }

    if (*c_gro) {
        const int m = int(st.num(o_g_m, "m", g_m));
        const int n = int(st.num(o_g_n, "n", g_n));
        const double tau = st.num(o_g_tau, "tau", g_tau);
        const double scale = st.num(o_g_sc, "scale", g_scale);
        if (g_critical) {
            bool warn = false;
            std::printf("%s\n", format_real(dda::critical_exponent(m, n, tau, &warn)).c_str());
            return 0;
        }
        dda::QuasinormWeights v = dda::QuasinormWeights::uniform(n);
        dda::CriterionReport rep;
        dda::MultivariableApproxFunction Psi(dda::PowerLaw{tau, scale}, v);
        if (o_g_s->count() > 0 ||
            (st.file.count("s") && st.file.at("s").kind == ConfigValue::Kind::Number)) {
            const double s = st.num(o_g_s, "s", g_s);
            rep = dda::classify_divergence_sum(Psi, n, m, s);
        } else {
            rep = dda::classify_convergence_sum(Psi, n);
        }
        auto em = make_emitter(out_dir, "groshev", st);
        em.json(nlohmann::json::parse(rep.to_json()), dda::canonical_config(st.resolved));
        return 0;
    }

    if (*c_dic) {
        auto M = dda::make_manifold(dda::parse_config_value(st.expr(o_di_m, "manifold", di_manifold)));
        auto theta = dda::make_shift(dda::parse_config_value(st.expr(o_di_t, "theta", di_theta)));
        auto v = weights_for(o_di_v, di_v, M.n());
        auto taus = st.reals(o_di_taus, "taus", di_taus);
        auto Hs = st.reals(o_di_H, "H", di_H);
        const long long N = std::llround(st.num(o_di_N, "N", double(di_N)));
        st.resolved["mode"] = dda::parse_config_value(di_mode);
        const auto mode = di_mode == "cumulative" ? dda::DichotomyMode::Cumulative
                                                  : dda::DichotomyMode::TailBlock;
        auto rows = dda::dichotomy_experiment(M, theta, v, taus, Hs, mode, M.domain(), N,
                                              seed, workers);
        auto em = make_emitter(out_dir, "dichotomy", st);
        std::vector<std::string> lines;
        for (const auto& row : rows)
            for (const auto& [H, frac] : row.fractions)
                lines.push_back(format_real(row.tau) + "," + format_real(H) + "," +
                                format_real(frac));
        em.csv("tau,H,fraction", lines);
        return 0;
    }

    if (*c_good) {
        auto coeffs = st.reals(o_go_c, "coeffs", go_coeffs);
        const double C = st.num(o_go_C, "C", go_C);
        const double alpha = st.num(o_go_a, "alpha", go_alpha);
        auto eps = st.reals(o_go_e, "eps", go_eps);
        st.resolved["lo"] = num_value(go_lo);
        st.resolved["hi"] = num_value(go_hi);
        auto g = [&coeffs](const std::vector<double>& x) {
            double acc = 0.0;
            for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x[0] + coeffs[i];
            return acc;
        };
        auto res = dda::good_function_test(g, dda::Box::interval(go_lo, go_hi), C, alpha, eps,
                                           go_grid);
        auto em = make_emitter(out_dir, "good", st);
        nlohmann::json j;
        j["pass"] = res.pass;
        j["worst_ratio"] = res.worst_ratio;
        j["worst_eps"] = res.worst_eps;
        j["sup"] = res.sup;
        em.json(j, dda::canonical_config(st.resolved));
        return 0;
    }

    if (*c_nice) {
        auto M = dda::make_manifold(dda::parse_config_value(st.expr(o_ni_m, "manifold", ni_manifold)));
        auto v = weights_for(o_ni_v, ni_v, M.n());
        auto Qs = st.reals(o_ni_Q, "Q", ni_Q);
        const double delta = st.num(o_ni_d, "delta", ni_delta);
        const double C = st.num(o_ni_C, "C", ni_C);
        const long long N = std::llround(st.num(o_ni_N, "N", double(ni_N)));
        auto res = dda::nice_test(M, M.domain(), delta, v, Qs, N, seed, workers, C);
        auto em = make_emitter(out_dir, "nice", st);
        nlohmann::json j;
        for (const auto& [Q, frac] : res.fractions)
            j["fractions"].push_back({{"Q", Q}, {"fraction", frac}});
        j["tail_max"] = res.tail_max;
        j["bound"] = res.bound;
        j["within"] = res.within;
        em.json(j, dda::canonical_config(st.resolved));
        return 0;
    }

    if (*c_bkm) {
        auto M = dda::make_manifold(dda::parse_config_value(st.expr(o_bk_m, "manifold", bk_manifold)));
        auto theta = dda::make_shift(dda::parse_config_value(st.expr(o_bk_t, "theta", bk_theta)));
        auto a_reals = st.reals(o_bk_a, "a", bk_a);
        std::vector<long long> a;
        for (double c : a_reals) a.push_back(std::llround(c));
        const double delta = st.num(o_bk_d, "delta", bk_delta);
        st.resolved["grid"] = num_value(double(bk_grid));
        st.resolved["enforce_gradient"] = num_value(bk_nograd ? 0.0 : 1.0);
        auto res = dda::bkm_bound_check(M, theta, M.domain(), a, delta, bk_grid, !bk_nograd);
        auto em = make_emitter(out_dir, "bkm", st);
        nlohmann::json j;
        j["applicable"] = res.applicable;
        j["L"] = res.L;
        j["r"] = res.r;
        j["qnorm"] = res.qnorm;
        j["threshold"] = res.threshold;
        j["fraction"] = res.fraction;
        j["ratio"] = res.ratio;
        em.json(j, dda::canonical_config(st.resolved));
        return 0;
    }

    if (*c_tra) {
        auto M = dda::make_manifold(dda::parse_config_value(st.expr(o_tr_m, "manifold", tr_manifold)));
        auto theta = dda::make_shift(dda::parse_config_value(st.expr(o_tr_th, "theta", tr_theta)));
        auto t_reals = st.reals(o_tr_t, "t", tr_t);
        std::vector<int> t;
        for (double c : t_reals) t.push_back(int(std::llround(c)));
        const double delta = st.num(o_tr_d, "delta", tr_delta);
        const long long trials = std::llround(st.num(o_tr_n, "trials", double(tr_trials)));
        auto rep = dda::verify_intersection_property(M, theta, t, delta, trials, seed);
        auto em = make_emitter(out_dir, "transfer", st);
        em.json(nlohmann::json::parse(rep.to_json()), dda::canonical_config(st.resolved));
        return 0;
    }

    if (*c_ubi) {
        auto M = dda::make_manifold(dda::parse_config_value(st.expr(o_ub_m, "manifold", ub_manifold)));
        auto theta = dda::make_shift(dda::parse_config_value(st.expr(o_ub_th, "theta", ub_theta)));
        auto v = weights_for(o_ub_v, ub_v, M.n());
        st.resolved["mode"] = dda::parse_config_value(ub_mode);
        nlohmann::json j;
        if (ub_mode == "covering") {
            st.resolved["t"] = num_value(double(ub_t));
            st.resolved["N"] = num_value(double(ub_N));
            st.resolved["delta"] = num_value(ub_delta);
            st.resolved["omega"] = num_value(ub_omega);
            dda::PaperConstants consts(M.n(), M.m(), M.certify_c0(), ub_delta, v.v1());
            auto rep = dda::estimate_covering_property(M, theta, M.domain(), ub_t, v, consts,
                                                       ub_N, seed, ub_omega);
            j = nlohmann::json::parse(rep.to_json());
        } else {
            auto a_reals = st.reals(o_ub_a, "a", ub_a);
            std::vector<long long> a;
            for (double c : a_reals) a.push_back(std::llround(c));
            const long long a0 = std::llround(st.num(o_ub_a0, "a0", double(ub_a0)));
            st.resolved["p"] = num_value(ub_p);
            st.resolved["rho"] = num_value(ub_rho);
            st.resolved["rho_t"] = num_value(ub_rho_t);
            st.resolved["trim"] = num_value(ub_untrimmed ? 0.0 : 1.0);
            dda::ResonantFunction F{a, a0};
            auto S = dda::trim_resonant(F, theta, M, M.domain(), ub_p, ub_rho, ub_fibers,
                                        !ub_untrimmed);
            const double lambdas[] = {ub_rho_t / 2.0, ub_rho_t / 4.0, ub_rho_t / 8.0};
            auto rep = dda::check_intersection_conditions(S, ub_rho_t, lambdas, 3);
            j = nlohmann::json::parse(rep.to_json());
            j["surface_points"] = static_cast<long long>(S.points.size());
            j["extra_ok"] = S.extra_ok;
        }
        auto em = make_emitter(out_dir, "ubiquity", st);
        em.json(j, dda::canonical_config(st.resolved));
        return 0;
    }

    if (*c_dim) {
        auto M = dda::make_manifold(dda::parse_config_value(st.expr(o_dm_m, "manifold", dm_manifold)));
        auto theta = dda::make_shift(dda::parse_config_value(st.expr(o_dm_t, "theta", dm_theta)));
        auto v = weights_for(o_dm_v, dm_v, M.n());
        const double tau = st.num(o_dm_tau, "tau", dm_tau);
        const double scale = st.num(o_dm_sc, "scale", dm_scale);
        const double Hcap = st.num(o_dm_H, "H_cap", dm_Hcap);
        st.resolved["k_min"] = num_value(double(dm_kmin));
        st.resolved["k_max"] = num_value(double(dm_kmax));
        auto est = dda::truncated_dimension_experiment(M, theta, v, tau, scale, Hcap, dm_kmin,
                                                       dm_kmax);
        auto em = make_emitter(out_dir, "dimension", st);
        std::vector<std::string> lines;
        for (size_t i = 0; i < est.scales.size(); ++i)
            lines.push_back(format_real(est.scales[i]) + "," + std::to_string(est.counts[i]));
        em.csv("scale,count", lines);
        em.json(nlohmann::json::parse(est.to_json()), dda::canonical_config(st.resolved));
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const dda::capacity_error& e) {
        std::fprintf(stderr, "capacity error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
