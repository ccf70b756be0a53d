#include "tori/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tori/brauer.hpp"
#include "tori/fellbundle.hpp"
#include "tori/selftest.hpp"
#include "tori/twogroup.hpp"

namespace tori::cli {

namespace {

constexpr int kOk = 0;
constexpr int kSemanticFailure = 1;
constexpr int kInputError = 2;

json conventions() {
    return json{{"restrict_subtorus_sign", "+1"},
                {"dd_sign", "+1"},
                {"associator_orientation", fell::kAssociatorOrientation}};
}

json load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    json j;
    in >> j;
    return j;
}

struct Emitter {
    std::string json_out;
    std::ostream& out;

    void emit(const json& j) const {
        std::string text = j.dump(2);
        if (!json_out.empty()) {
            std::ofstream f(json_out);
            if (!f) throw std::invalid_argument("cannot open output file: " + json_out);
            f << text << "\n";
        } else {
            out << text << "\n";
        }
    }
};

int run_check(const std::string& kind, const std::string& input, int random_count, int random_n,
              long long box, const std::string& fault, Mode mode, const Emitter& emitter,
              unsigned long long seed) {
    CheckReport report;
    if (kind == "crossed-module" || kind == "coherence") {
        twogroup::CheckOptions opts;
        opts.corrupt_conj = fault == "conj";
        opts.corrupt_associator_sign = fault == "associator-sign";
        int n = random_n;
        json samples_json;
        if (!input.empty()) {
            json j = load_input(input);
            n = j.at("n").get<int>();
            if (j.contains("random")) random_count = j.at("random").get<int>();
            if (j.contains("samples")) samples_json = j.at("samples");
        }
        std::mt19937_64 rng(seed);
        if (kind == "crossed-module") {
            std::vector<twogroup::CrossedModuleSample> samples;
            if (!samples_json.is_null()) {
                for (const auto& s : samples_json)
                    samples.push_back({twogroup::h1_from_json(s.at("h1")),
                                       twogroup::h2_from_json(s.at("h2")),
                                       twogroup::h2_from_json(s.at("h2b"))});
            } else {
                samples = twogroup::random_crossed_module_samples(n, random_count, rng);
            }
            report = twogroup::check_crossed_module(samples, opts);
        } else {
            std::vector<twogroup::CoherenceSample> samples;
            if (!samples_json.is_null()) {
                for (const auto& s : samples_json) {
                    std::vector<exterior::MultiVector> ts;
                    for (const auto& t : s.at("ts"))
                        ts.push_back(exterior::multivector_from_json(t));
                    if (ts.size() != 4)
                        throw std::invalid_argument("coherence samples need four grade-1 vectors");
                    samples.push_back({std::move(ts), twogroup::h1_from_json(s.at("g1")),
                                       twogroup::h1_from_json(s.at("g2"))});
                }
            } else {
                samples = twogroup::random_coherence_samples(n, random_count, rng);
            }
            report = twogroup::check_coherence(samples, opts);
        }
    } else if (kind == "fiber-action") {
        if (input.empty()) throw std::invalid_argument("fiber-action check needs an input file");
        json j = load_input(input);
        if (j.contains("box")) box = j.at("box").get<long long>();
        auto action = brauer::FiberAction::from_json(
            j.contains("action") ? j.at("action") : j, mode);
        report = brauer::validate_fiber_action(action, box);
    } else if (kind == "strict-action") {
        if (input.empty()) throw std::invalid_argument("strict-action check needs an input file");
        auto data = brauer::StrictActionData::from_json(load_input(input), mode);
        report = brauer::check_strict_action(data);
    } else {
        throw std::invalid_argument("unknown check kind: " + kind);
    }
    json out = report.to_json();
    out["conventions"] = conventions();
    emitter.emit(out);
    return report.ok() ? kOk : kSemanticFailure;
}

int run_classify(const std::string& input, Mode mode, const Emitter& emitter) {
    json j = load_input(input);
    auto action = brauer::FiberAction::from_json(j.contains("action") ? j.at("action") : j, mode);
    auto cls = brauer::classify(action);
    json out = cls.to_json();
    out["dd"] = brauer::dd_class(cls);
    out["mackey"] = brauer::mackey(cls).to_json();
    out["conventions"] = conventions();
    emitter.emit(out);
    return kOk;
}

int run_obstruction(const std::string& input, Mode mode, const Emitter& emitter) {
    json j = load_input(input);
    int n = j.at("n").get<int>();
    std::vector<std::vector<int>> subtori;
    for (const auto& s : j.at("subtori")) {
        std::vector<int> t = s.get<std::vector<int>>();
        if (t.size() != 3 || !(1 <= t[0] && t[0] < t[1] && t[1] < t[2] && t[2] <= n))
            throw std::invalid_argument("subtori must be 1-based triples i<j<k within n");
        subtori.push_back(t);
    }
    // Assemble chi from the per-subtorus invariants, with + orientation on
    // each basis element e_i ^ e_j ^ e_k.
    cohomology::ObstructionFunction chi(n, 3);
    size_t k3 = static_cast<size_t>(exterior::basis_size(n, 3));
    json verdicts = json::object();
    bool all_liftable = true;
    for (const auto& [point, vals] : j.at("dd").items()) {
        if (vals.size() != subtori.size())
            throw std::invalid_argument("dd entries must match the subtorus list");
        std::vector<Scalar> value(k3, Scalar(0));
        for (size_t s = 0; s < subtori.size(); ++s) {
            Scalar v = scalar_from_json(vals[s], mode);
            if (!v.is_integer()) throw std::invalid_argument("dd values must be integral");
            size_t idx = static_cast<size_t>(exterior::basis_rank(
                n, {subtori[s][0] - 1, subtori[s][1] - 1, subtori[s][2] - 1}));
            value[idx] += v;
        }
        bool liftable = true;
        for (const auto& v : value) liftable = liftable && v.is_zero();
        verdicts[point] = liftable;
        all_liftable = all_liftable && liftable;
        chi.set(point, std::move(value));
    }
    json out{{"chi", chi.to_json()},
             {"liftable", all_liftable},
             {"verdicts", verdicts},
             {"conventions", conventions()}};
    emitter.emit(out);
    return kOk;
}

int run_tdual(const std::string& input, Mode mode, const Emitter& emitter) {
    auto family = brauer::FamilyOverBase::from_json(load_input(input), mode);
    auto decision = brauer::t_duality_decision(family);
    json out = decision.to_json();
    out["conventions"] = conventions();
    emitter.emit(out);
    return kOk;
}

int run_fell_demo(int n, long long N, const std::string& m_str, const std::string& suite,
                  unsigned long long seed, const Emitter& emitter) {
    std::vector<long long> m;
    std::stringstream ss(m_str);
    std::string tok;
    while (std::getline(ss, tok, ',')) m.push_back(std::stoll(tok));
    fell::GridTricharacter chi(n, N, m);
    fell::Grid g(n, N);
    std::mt19937_64 rng(seed);
    json out{{"n", n}, {"N", N}, {"m", m}, {"suite", suite}, {"conventions", conventions()}};
    bool ok = true;

    if (suite == "axioms") {
        auto report = fell::check_action_axioms(chi, {50, false, seed});
        out["report"] = report.to_json();
        ok = report.ok();
    } else if (suite == "phi") {
        double worst = 0;
        for (int rep = 0; rep < 20; ++rep) {
            fell::Kernel K1(g), K2(g);
            std::uniform_int_distribution<int> dv(-3, 3);
            for (auto& z : K1.data) z = fell::cplx(dv(rng), dv(rng));
            for (auto& z : K2.data) z = fell::cplx(dv(rng), dv(rng));
            worst = std::max(worst, fell::phi(fell::kernel_mult(K1, K2, chi))
                                        .max_diff(fell::convolve(fell::phi(K1), fell::phi(K2), chi)));
            worst = std::max(worst, fell::involute(fell::phi(K1))
                                        .max_diff(fell::phi(fell::kernel_adjoint(K1))));
        }
        out["max_residual"] = worst;
        ok = worst <= 1e-12;
    } else if (suite == "norms") {
        double worst = 0;
        for (int rep = 0; rep < 20; ++rep) {
            auto f = fell::random_section(g, rng);
            double a = fell::hs_norm(f);
            double b = fell::hs_norm_via_convolution(f, chi);
            worst = std::max(worst, std::fabs(a - b) / std::max(1.0, a));
        }
        out["max_residual"] = worst;
        ok = worst <= 1e-12;
    } else if (suite == "associator") {
        double worst = 0;
        bool all_match = true;
        std::uniform_int_distribution<long long> coord(0, N - 1);
        for (int rep = 0; rep < 50; ++rep) {
            std::vector<long long> t(static_cast<size_t>(n)), u(static_cast<size_t>(n)),
                v(static_cast<size_t>(n));
            for (auto& x : t) x = coord(rng);
            for (auto& x : u) x = coord(rng);
            for (auto& x : v) x = coord(rng);
            auto fs = fell::random_homogeneous(g, t, rng, true);
            auto gs = fell::random_homogeneous(g, u, rng, true);
            auto hs = fell::random_homogeneous(g, v, rng, true);
            try {
                auto d = fell::associator_defect(fs, gs, hs, chi);
                Phase expect = fell::kAssociatorOrientation == 1 ? d.chi_value : d.chi_inverse;
                all_match = all_match && d.defect.equals(expect);
                worst = std::max(worst, d.constancy_residual);
            } catch (const std::domain_error&) {
                // a vanishing product; draw again
            }
        }
        out["max_residual"] = worst;
        out["orientation_consistent"] = all_match;
        ok = all_match;
    } else {
        throw std::invalid_argument("unknown fell-demo suite: " + suite);
    }
    out["ok"] = ok;
    emitter.emit(out);
    return ok ? kOk : kSemanticFailure;
}

int run_selftest(const std::string& suite, bool stress, unsigned long long seed,
                 const Emitter& emitter, std::ostream& out_stream) {
    selftest::Options opts;
    opts.stress = stress;
    opts.seed = seed;
    auto results = selftest::run_all(opts, suite);
    if (results.empty()) throw std::invalid_argument("unknown selftest suite: " + suite);
    bool all_ok = true;
    json rows = json::array();
    for (const auto& r : results) {
        all_ok = all_ok && r.passed;
        out_stream << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.ms << " ms)\n";
        rows.push_back(json{{"suite", r.name}, {"ok", r.passed}, {"ms", r.ms}});
    }
    if (!emitter.json_out.empty()) emitter.emit(json{{"ok", all_ok}, {"suites", rows}});
    return all_ok ? kOk : kSemanticFailure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"computational algebra for torus actions, their invariants, and duality decisions"};
    app.require_subcommand(1);

    std::string mode_str = "exact";
    double tol = kFloatTol;
    unsigned long long seed = 1;
    std::string json_out;
    app.add_option("--mode", mode_str)->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--tol", tol);
    app.add_option("--seed", seed);
    app.add_option("--json-out", json_out);

    std::string kind, input, fault;
    int random_count = 200, random_n = 4;
    long long box = 2;
    auto* check = app.add_subcommand("check", "run a law checker over samples");
    check->add_option("--kind", kind)
        ->required()
        ->check(CLI::IsMember({"crossed-module", "coherence", "fiber-action", "strict-action"}));
    check->add_option("input", input);
    check->add_option("--random", random_count);
    check->add_option("--n", random_n);
    check->add_option("--box", box);
    check->add_option("--inject-fault", fault)
        ->check(CLI::IsMember({"conj", "associator-sign"}));

    std::string classify_input;
    auto* classify = app.add_subcommand("classify", "invariants of a fiber action");
    classify->add_option("input", classify_input)->required();

    std::string obstruction_input;
    auto* obstruction = app.add_subcommand("obstruction", "assemble the lifting obstruction");
    obstruction->add_option("input", obstruction_input)->required();

    std::string tdual_input;
    auto* tdual = app.add_subcommand("tdual", "duality decision for a family over a base");
    tdual->add_option("input", tdual_input)->required();

    int fd_n = 3;
    long long fd_N = 4;
    std::string fd_m = "1", fd_suite = "axioms";
    auto* fell_demo = app.add_subcommand("fell-demo", "discrete twisted-convolution suites");
    fell_demo->add_option("--n", fd_n);
    fell_demo->add_option("--N", fd_N);
    fell_demo->add_option("--m", fd_m);
    fell_demo->add_option("--suite", fd_suite)
        ->check(CLI::IsMember({"phi", "associator", "axioms", "norms"}));

    std::string st_suite;
    bool st_stress = false;
    auto* selftest_cmd = app.add_subcommand("selftest", "run the module invariant suites");
    selftest_cmd->add_option("--suite", st_suite);
    selftest_cmd->add_flag("--stress", st_stress);

    std::vector<const char*> argv;
    argv.push_back("tori");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    Mode mode = mode_str == "exact" ? Mode::Exact : Mode::Float;
    Emitter emitter{json_out, out};
    try {
        if (*check)
            return run_check(kind, input, random_count, random_n, box, fault, mode, emitter, seed);
        if (*classify) return run_classify(classify_input, mode, emitter);
        if (*obstruction) return run_obstruction(obstruction_input, mode, emitter);
        if (*tdual) return run_tdual(tdual_input, mode, emitter);
        if (*fell_demo) return run_fell_demo(fd_n, fd_N, fd_m, fd_suite, seed, emitter);
        if (*selftest_cmd) return run_selftest(st_suite, st_stress, seed, emitter, out);
    } catch (const std::domain_error& e) {
        err << "failure: " << e.what() << "\n";
        return kSemanticFailure;
    } catch (const json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::out_of_range& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

} // namespace tori::cli
