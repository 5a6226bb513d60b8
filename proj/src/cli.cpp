#include "kop/cli.hpp"

#include "kop/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace kop::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Settings {
    RingConfig cfg;
    std::string format = "json";
    std::uint64_t seed = 1;
    std::size_t n_max = 48;
    std::optional<std::size_t> k_max;
    std::size_t corpus_size = 50;
};

Vector parse_list(const std::string& s) {
    Vector v;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) continue;
        try {
            v.push_back(parse_rational(item));
        } catch (const std::exception&) {
            throw UsageError("bad rational in list: '" + item + "'");
        }
    }
    return v;
}

std::string join_list(const Vector& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + to_string(x);
    return s;
}

Json config_json(const Settings& s) {
    return Json{{"p", s.cfg.p},
                {"q", s.cfg.q.get_si()},
                {"variant", std::string(to_string(s.cfg.variant))},
                {"truncation", s.cfg.truncation},
                {"seed", s.seed}};
}

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int main(const std::vector<std::string>& args);

private:
    void emit(Json j, const std::string& text) {
        if (settings_.format == "text") {
            out_ << text << '\n';
            return;
        }
        if (settings_.format == "csv") throw UsageError("csv output is only available for ring constants and ring adams/mul");
        if (j.is_object()) j["config"] = config_json(settings_);
        out_ << j.dump(2) << '\n';
    }

    void emit_phi(const PhiVector& a) {
        if (settings_.format == "csv") {
            out_ << "k,value\n";
            for (std::size_t k = 0; k < a.truncation(); ++k) out_ << k << ',' << to_string(a[k]) << '\n';
            return;
        }
        emit(phi_to_json(a), join_list(a.coeffs()));
    }

    Settings resolve();
    FpModule load_module(const std::string& path);

    int ring_cmd(CLI::App* sub);
    int verify_cmd(CLI::App* sub);
    int module_cmd(CLI::App* sub);
    int sequence_cmd(CLI::App* sub);
    int corpus_cmd(CLI::App* sub);

    std::ostream& out_;
    std::ostream& err_;
    Settings settings_;

    // Global flags.
    unsigned long p_ = 0;
    long q_ = 0;
    std::string variant_, format_, config_path_;
    std::size_t trunc_ = 0;
    std::uint64_t seed_ = 0;
    CLI::Option *p_opt_{}, *q_opt_{}, *variant_opt_{}, *trunc_opt_{}, *format_opt_{}, *seed_opt_{};

    // Command-specific flags.
    std::string a_, b_, j_, poly_, x_, file_, file2_, f_path_;
    std::size_t n_ = 0, m_ = 0, s_max_ = 3, n_max_ = 0, trials_ = 20, support_ = 0, gamma_n_ = 0;
    unsigned k_ = 1;
    std::size_t index_ = 0, k_max_ = 0, size_ = 0;
    CLI::Option *n_max_opt_{}, *k_max_opt_{}, *size_opt_{}, *support_opt_{};
};

Settings Runner::resolve() {
    Settings s;
    unsigned long p = 3;
    if (const char* env = std::getenv("KOP_PRIME")) {
        try {
            p = std::stoul(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("KOP_PRIME is not a number: ") + env);
        }
    }
    std::optional<long> q;
    Variant variant = Variant::NonSplit;
    std::size_t trunc = 12;
    if (!config_path_.empty()) {
        Json c = read_json_file(config_path_);
        if (!c.is_object()) throw InputError("config must be a JSON object");
        try {
            if (c.contains("p")) p = c.at("p").get<unsigned long>();
            if (c.contains("q")) q = c.at("q").get<long>();
            if (c.contains("variant")) variant = parse_variant(c.at("variant").get<std::string>());
            if (c.contains("truncation")) trunc = c.at("truncation").get<std::size_t>();
            if (c.contains("format")) s.format = c.at("format").get<std::string>();
            if (c.contains("seed")) s.seed = c.at("seed").get<std::uint64_t>();
            if (c.contains("n_max")) s.n_max = c.at("n_max").get<std::size_t>();
            if (c.contains("k_max")) s.k_max = c.at("k_max").get<std::size_t>();
            if (c.contains("corpus_size")) s.corpus_size = c.at("corpus_size").get<std::size_t>();
        } catch (const nlohmann::json::exception& e) {
            throw InputError(std::string("bad config: ") + e.what());
        }
    }
    if (p_opt_->count()) p = p_;
    if (q_opt_->count()) q = q_;
    if (variant_opt_->count()) variant = parse_variant(variant_);
    if (trunc_opt_->count()) trunc = trunc_;
    if (format_opt_->count()) s.format = format_;
    if (seed_opt_->count()) s.seed = seed_;
    if (s.format != "json" && s.format != "csv" && s.format != "text") {
        throw UsageError("unknown format '" + s.format + "'");
    }
    s.cfg = q ? make_config(p, Integer(*q), variant, trunc) : make_config(p, variant, trunc);
    return s;
}

FpModule Runner::load_module(const std::string& path) {
    FpModule m = module_from_json(read_json_file(path), &settings_.cfg);
    return m;
}

int Runner::ring_cmd(CLI::App* sub) {
    OperationRing ring(settings_.cfg);
    const std::size_t N = settings_.cfg.truncation;
    if (sub->got_subcommand("mul")) {
        PhiVector a(parse_list(a_)), b(parse_list(b_));
        emit_phi(ring.multiply(a, b));
    } else if (sub->got_subcommand("adams")) {
        emit_phi(ring.adams_expansion(parse_rational(j_), N));
    } else if (sub->got_subcommand("constants")) {
        if (settings_.format == "json" && format_opt_->count()) {
            Json rows = Json::array();
            auto table = ring.structure_table(N);
            for (std::size_t j = 0; j < N; ++j)
                for (std::size_t n = 0; n < N; ++n)
                    for (std::size_t k = std::max(j, n); k < N && k <= j + n; ++k)
                        rows.push_back(Json{{"j", j}, {"n", n}, {"k", k}, {"value", to_string(table->at(j, n, k))}});
            out_ << rows.dump(2) << '\n';
        } else {
            out_ << structure_constants_csv(ring, N);
        }
    } else if (sub->got_subcommand("divide")) {
        OperationPoly quotient = ring.divide_phi(n_, m_);
        emit(Json{{"n", n_}, {"m", m_}, {"poly", vector_to_json(quotient.coeffs())},
                  {"phi", vector_to_json(ring.poly_to_phi(quotient).coeffs())}},
             quotient.to_string());
    } else if (sub->got_subcommand("unit")) {
        OperationPoly f(parse_list(poly_));
        const bool unit = ring.is_unit(f);
        emit(Json{{"poly", vector_to_json(f.coeffs())}, {"unit", unit}}, unit ? "unit" : "not a unit");
    }
    return 0;
}

int Runner::verify_cmd(CLI::App* sub) {
    OperationRing ring(settings_.cfg);
    IdentityReport rep;
    if (sub->got_subcommand("ccong")) {
        rep = verify_ccong(ring, s_max_, n_max_opt_->count() ? n_max_ : 8);
    } else if (sub->got_subcommand("phiquot")) {
        rep = verify_phi_quotient(ring, n_max_opt_->count() ? n_max_ : 28);
    } else if (sub->got_subcommand("thetapower")) {
        rep = verify_theta_power(ring, k_, index_);
    } else if (sub->got_subcommand("symmetry")) {
        rep = verify_symmetry(ring, n_max_opt_->count() ? n_max_ : 10);
    } else if (sub->got_subcommand("abcongs")) {
        if (!a_.empty()) {
            AbcongSolution sol = ring.solve_abcongs(parse_list(a_), n_);
            emit(abcong_to_json(sol), sol.consistent && sol.pattern_holds ? "solved" : "failed");
            return sol.consistent && sol.pattern_holds ? 0 : 1;
        }
        rep = verify_abcongs(ring, n_max_opt_->count() ? n_max_ : 6, trials_, settings_.seed);
    }
    std::string text = rep.summary + ": " + (rep.pass() ? "pass" : "FAIL") + " (" + std::to_string(rep.checked) +
                       " checked, " + std::to_string(rep.failures.size()) + " failures)";
    emit(report_to_json(rep), text);
    return rep.pass() ? 0 : 1;
}

int Runner::module_cmd(CLI::App* sub) {
    if (sub->got_subcommand("check")) {
        Json doc = read_json_file(file_);
        FpModule m;
        try {
            m = module_from_json(doc, &settings_.cfg);
        } catch (const ModuleValidationError& e) {
            Json v = e.violations();
            emit(Json{{"valid", false}, {"violations", v}}, std::string("invalid: ") + e.what());
            return 1;
        }
        auto exp = annihilation_exponent(m, n_max_opt_->count() ? n_max_ : default_n_max(m));
        Json j{{"valid", true}, {"dimension", m.dimension()}};
        j["annihilation_exponent"] = exp ? Json(*exp) : Json(nullptr);
        emit(j, exp ? "valid, discrete with annihilation exponent " + std::to_string(*exp)
                    : "valid, no annihilation exponent within the bound");
        return 0;
    }
    FpModule m = load_module(file_);
    OperationRing ring(m.config());
    if (sub->got_subcommand("act")) {
        ModuleElement x = parse_list(x_);
        ModuleElement y;
        if (!j_.empty()) y = adams_action(ring, m, parse_rational(j_), x);
        else if (!a_.empty()) y = apply_operation(ring, m, PhiVector(parse_list(a_)), x);
        else y = m.act(x);
        emit(Json{{"x", vector_to_json(m.reduce(x))}, {"result", vector_to_json(y)}}, join_list(y));
    } else if (sub->got_subcommand("bousfield")) {
        const std::size_t k_max = k_max_opt_->count() ? k_max_ : settings_.k_max.value_or(default_k_max(m));
        const std::size_t n_max = n_max_opt_->count() ? n_max_ : default_n_max(m);
        BousfieldReport rep = bousfield_check(m, k_max);
        auto exp = annihilation_exponent(m, n_max);
        Json j = report_to_json(rep);
        j["annihilation_exponent"] = exp ? Json(*exp) : Json(nullptr);
        j["k_max"] = k_max;
        j["n_max"] = n_max;
        emit(j, std::string("bousfield: ") + (rep.pass() ? "pass" : "fail") + ", (b) " +
                    std::string(to_string(rep.diagonalisable)) + ", (c) " + std::string(to_string(rep.continuity)));
        return rep.pass() ? 0 : 1;
    } else if (sub->got_subcommand("coaction")) {
        Json pairs = Json::array();
        std::string text;
        for (const auto& [n, v] : coaction(m, parse_list(x_))) {
            pairs.push_back(Json::array({n, vector_to_json(v)}));
            text += std::to_string(n) + ": " + join_list(v) + "\n";
        }
        emit(Json{{"coaction", pairs}}, text);
    } else if (sub->got_subcommand("hom")) {
        FpModule target = load_module(file2_);
        HomGroup h = hom_A(m, target);
        emit(hom_to_json(h), std::to_string(h.generators.size()) + " generators");
    }
    return 0;
}

int Runner::sequence_cmd(CLI::App* sub) {
    FpModule m = load_module(file_);
    OperationRing ring(m.config());
    if (sub->got_subcommand("verify")) {
        const std::size_t n0 = require_discrete(m);
        const std::size_t S = support_opt_->count() ? support_ : n0 + 2 * m.config().period();
        ExactnessReport rep = verify_exact_sequence(ring, m, S);
        std::string text;
        for (const auto& c : rep.clauses) text += c.name + ": " + (c.pass ? "pass" : "FAIL") + " " + c.witness + "\n";
        emit(report_to_json(rep), text);
        return rep.pass() ? 0 : 1;
    }
    if (sub->got_subcommand("alpha")) {
        UElement f = alpha(m, parse_list(x_), support_);
        emit(uelement_to_json(f), uelement_to_json(f).dump());
    } else if (sub->got_subcommand("beta")) {
        UElement f = beta(m, uelement_from_json(read_json_file(f_path_), m));
        emit(uelement_to_json(f), uelement_to_json(f).dump());
    } else if (sub->got_subcommand("gamma")) {
        Vector g = gamma(ring, m, uelement_from_json(read_json_file(f_path_), m), gamma_n_);
        emit(Json{{"gamma", vector_to_json(g)}}, join_list(g));
    }
    return 0;
}

int Runner::corpus_cmd(CLI::App*) {
    CorpusOptions opts;
    opts.size = size_opt_->count() ? size_ : settings_.corpus_size;
    Json arr = Json::array();
    for (const auto& e : generate_corpus(settings_.cfg, opts, settings_.seed)) {
        Json j = module_to_json(e.module);
        j["kind"] = e.kind;
        arr.push_back(j);
    }
    emit(Json{{"modules", arr}, {"size", opts.size}}, std::to_string(opts.size) + " modules");
    return 0;
}

int Runner::main(const std::vector<std::string>& args) {
    CLI::App app{"Exact computations in the ring of degree-zero stable operations in p-local K-theory", "kop"};
    app.require_subcommand(1);
    app.fallthrough();
    p_opt_ = app.add_option("--p", p_, "odd prime (default 3, or $KOP_PRIME)");
    q_opt_ = app.add_option("--q", q_, "generator, primitive modulo p^2");
    variant_opt_ = app.add_option("--variant", variant_, "nonsplit | split");
    trunc_opt_ = app.add_option("--trunc", trunc_, "truncation N (default 12)");
    format_opt_ = app.add_option("--format", format_, "json | csv | text");
    seed_opt_ = app.add_option("--seed", seed_, "seed for random instances");
    app.add_option("--config", config_path_, "optional JSON config; flags override it");

    auto leaf = [](CLI::App* parent, const std::string& name, const std::string& desc) {
        CLI::App* s = parent->add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };

    CLI::App* ring = app.add_subcommand("ring", "ring operations");
    ring->require_subcommand(1)->fallthrough();
    auto* mul = leaf(ring, "mul", "product of two Phi-vectors");
    mul->add_option("--a", a_, "comma-separated coefficients")->required();
    mul->add_option("--b", b_, "comma-separated coefficients")->required();
    leaf(ring, "adams", "Adams expansion of Psi^j")->add_option("--j", j_, "p-local unit")->required();
    leaf(ring, "constants", "structure constants below the truncation");
    auto* divide = leaf(ring, "divide", "Theta_n / Theta_m");
    divide->add_option("--n", n_)->required();
    divide->add_option("--m", m_)->required();
    leaf(ring, "unit", "unit test for a polynomial in Psi^q")
        ->add_option("--poly", poly_, "comma-separated monomial coefficients")
        ->required();

    CLI::App* verify = app.add_subcommand("verify", "congruence sweeps");
    verify->require_subcommand(1)->fallthrough();
    n_max_opt_ = verify->add_option("--n-max", n_max_);
    auto* ccong = leaf(verify, "ccong", "c^k_{j,n} = 0 mod p on the blocks");
    ccong->add_option("--s-max", s_max_);
    leaf(verify, "phiquot", "quotient congruence");
    auto* tp = leaf(verify, "thetapower", "Theta at p^k times the residue order");
    tp->add_option("--k", k_);
    tp->add_option("--index", index_, "override the index");
    auto* ab = leaf(verify, "abcongs", "solve the b_j congruences");
    ab->add_option("--trials", trials_);
    ab->add_option("--n", n_, "single solve: n");
    ab->add_option("--a", a_, "single solve: a_n..a_K");
    leaf(verify, "symmetry", "c^k_{j,n} = c^k_{n,j}");

    CLI::App* module = app.add_subcommand("module", "module workflows");
    module->require_subcommand(1)->fallthrough();
    k_max_opt_ = module->add_option("--k-max", k_max_);
    module->add_option("--n-max", n_max_);
    leaf(module, "check", "validate a module file")->add_option("file", file_)->required();
    auto* act = leaf(module, "act", "apply Psi^q, Psi^j or a Phi-vector");
    act->add_option("file", file_)->required();
    act->add_option("--x", x_)->required();
    act->add_option("--j", j_);
    act->add_option("--a", a_);
    leaf(module, "bousfield", "Bousfield conditions")->add_option("file", file_)->required();
    auto* co = leaf(module, "coaction", "coaction coefficients");
    co->add_option("file", file_)->required();
    co->add_option("--x", x_)->required();
    auto* hom = leaf(module, "hom", "generators of Hom_A");
    hom->add_option("source", file_)->required();
    hom->add_option("target", file2_)->required();

    CLI::App* seq = app.add_subcommand("sequence", "four-term exact sequence");
    seq->require_subcommand(1)->fallthrough();
    support_opt_ = seq->add_option("--support", support_);
    leaf(seq, "verify", "check every exactness clause")->add_option("file", file_)->required();
    auto* al = leaf(seq, "alpha", "alpha(x)");
    al->add_option("file", file_)->required();
    al->add_option("--x", x_)->required();
    auto* be = leaf(seq, "beta", "beta(f)");
    be->add_option("file", file_)->required();
    be->add_option("--f", f_path_, "UElement JSON file")->required();
    auto* ga = leaf(seq, "gamma", "gamma(f)");
    ga->add_option("file", file_)->required();
    ga->add_option("--f", f_path_, "UElement JSON file")->required();
    ga->add_option("--n", gamma_n_, "admissible n (default: smallest)");

    CLI::App* corpus = app.add_subcommand("corpus", "module corpora");
    corpus->require_subcommand(1)->fallthrough();
    size_opt_ = leaf(corpus, "generate", "seeded random modules")->add_option("--size", size_);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out_, err_);
        return code == 0 ? 0 : 2;
    }

    try {
        settings_ = resolve();
        if (n_max_opt_->count() == 0) n_max_ = settings_.n_max;
        if (ring->parsed()) return ring_cmd(ring);
        if (verify->parsed()) return verify_cmd(verify);
        if (module->parsed()) return module_cmd(module);
        if (seq->parsed()) return sequence_cmd(seq);
        if (corpus->parsed()) return corpus_cmd(corpus);
    } catch (const ConsistencyError& e) {
        err_ << "consistency failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err_ << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Runner r(out, err);
    return r.main(args);
}

}  // namespace kop::cli
