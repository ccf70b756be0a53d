#include "tori/selftest.hpp"

#include <chrono>

#include "tori/brauer.hpp"
#include "tori/fellbundle.hpp"
#include "tori/twogroup.hpp"

namespace tori::selftest {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

} // namespace

SuiteResult run_exterior(const Options& opts) {
    auto start = Clock::now();
    std::mt19937_64 rng(opts.seed);
    bool ok = true;
    json details = json::object();
    int checks = 0;

    for (int n : {2, 3, 5}) {
        for (int rep = 0; rep < 100; ++rep) {
            auto u = twogroup::random_multivector(n, 1, rng);
            auto v = twogroup::random_multivector(n, 1, rng);
            auto w = twogroup::random_multivector(n, 1, rng);
            // graded anticommutativity on grade-1 inputs
            if (exterior::wedge(u, v) != -exterior::wedge(v, u)) ok = false;
            // associativity
            if (exterior::wedge(exterior::wedge(u, v), w) !=
                exterior::wedge(u, exterior::wedge(v, w)))
                ok = false;
            // bilinearity
            auto uv = u + v;
            if (exterior::wedge(uv, w) != exterior::wedge(u, w) + exterior::wedge(v, w)) ok = false;
            checks += 3;
        }
        // lattice closure on basis sums
        exterior::MultiVector a = exterior::MultiVector::e(n, 0) + exterior::MultiVector::e(n, n - 1);
        if (!exterior::wedge(a, exterior::MultiVector::e(n, n - 1)).integral()) ok = false;
        ++checks;
    }
    details["checks"] = checks;
    return SuiteResult{"exterior", ok, elapsed_ms(start), details};
}

SuiteResult run_twogroup(const Options& opts) {
    auto start = Clock::now();
    std::mt19937_64 rng(opts.seed);
    int n = 5;
    auto cm = twogroup::check_crossed_module(twogroup::random_crossed_module_samples(n, 1000, rng));
    auto coh = twogroup::check_coherence(twogroup::random_coherence_samples(n, 1000, rng));

    // group axioms for the twisted product
    bool group_ok = true;
    for (int i = 0; i < 200; ++i) {
        auto a = twogroup::random_h1(n, rng);
        auto b = twogroup::random_h1(n, rng);
        auto c = twogroup::random_h1(n, rng);
        if (!(twogroup::h1_mul(twogroup::h1_mul(a, b), c) ==
              twogroup::h1_mul(a, twogroup::h1_mul(b, c))))
            group_ok = false;
        if (!(twogroup::h1_mul(a, twogroup::h1_inv(a)) == twogroup::H1Element::identity(n)))
            group_ok = false;
        if (!(twogroup::pi(twogroup::iota(a.t)) == a.t)) group_ok = false;
    }

    bool ok = cm.ok() && coh.ok() && group_ok;
    json details{{"crossed_module", cm.to_json()["ok"]},
                 {"coherence", coh.to_json()["ok"]},
                 {"group_axioms", group_ok}};
    return SuiteResult{"twogroup", ok, elapsed_ms(start), details};
}

SuiteResult run_cohomology(const Options& opts) {
    auto start = Clock::now();
    std::mt19937_64 rng(opts.seed);
    bool ok = true;
    int n = 3;
    std::uniform_int_distribution<long long> num(-5, 5);
    std::uniform_int_distribution<long long> den(1, 6);

    for (int rep = 0; rep < 50; ++rep) {
        // random standard cocycle and integral tricharacter: zero defect
        cohomology::PhaseMatrix theta(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) theta.set_pair(i, j, Phase(num(rng), den(rng)));
        auto omega = cohomology::standard_cocycle(theta);
        auto U = cohomology::Tricharacter::from_integral(n, {num(rng)});
        std::uniform_int_distribution<long long> coord(-2, 2);
        for (int t = 0; t < 20; ++t) {
            cohomology::LatticeVec k{coord(rng), coord(rng), coord(rng)};
            cohomology::LatticeVec l{coord(rng), coord(rng), coord(rng)};
            cohomology::LatticeVec m{coord(rng), coord(rng), coord(rng)};
            if (!cohomology::cocycle_defect(omega, U, k, l, m).is_zero()) ok = false;
        }
        // pairing round-trip
        if (!cohomology::commutator_pairing(omega).equals(theta)) ok = false;

        // coboundaries have trivial pairing
        cohomology::PhaseMap V(n, 2);
        for (long long i = 0; i < V.points(); ++i) {
            auto p = V.point(i);
            bool zero = true;
            for (auto c : p) zero = zero && c == 0;
            V.set(p, zero ? Phase() : Phase(num(rng), den(rng)));
        }
        auto dV = cohomology::coboundary1(V, 1);
        if (!cohomology::commutator_pairing(dV).is_zero()) ok = false;
        if (!cohomology::cohomologous(omega * dV, omega)) ok = false;
    }
    return SuiteResult{"cohomology", ok, elapsed_ms(start), json::object()};
}

SuiteResult run_brauer(const Options& opts) {
    auto start = Clock::now();
    std::mt19937_64 rng(opts.seed);
    bool ok = true;
    int n = 4;
    std::uniform_int_distribution<long long> num(-4, 4);
    std::uniform_int_distribution<long long> den(1, 6);
    std::uniform_int_distribution<long long> mval(-3, 3);

    auto random_action = [&] {
        cohomology::PhaseMatrix theta(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) theta.set_pair(i, j, Phase(num(rng), den(rng)));
        std::vector<long long> m(static_cast<size_t>(exterior::basis_size(n, 3)));
        for (auto& v : m) v = mval(rng);
        return brauer::action_from_obstruction(m, theta);
    };

    for (int rep = 0; rep < 30; ++rep) {
        auto a = random_action();
        auto b = random_action();
        if (!brauer::validate_fiber_action(a, 2).ok()) ok = false;
        auto ca = brauer::classify(a);
        auto cb = brauer::classify(b);
        if (!(brauer::classify(brauer::product(a, b)) == brauer::brauer_mul(ca, cb))) ok = false;
        if (!(brauer::brauer_mul(ca, brauer::brauer_inv(ca)) == brauer::BrauerClass::zero(n)))
            ok = false;
        // round-trip through the canonical action
        if (!(brauer::classify(brauer::action_from_obstruction(ca.m, ca.theta)) == ca)) ok = false;
        // restriction commutes with the invariant extraction
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k) {
                    auto r = brauer::restrict_subtorus(ca, i, j, k);
                    if (brauer::dd_class(r)[0] !=
                        ca.m[static_cast<size_t>(exterior::basis_rank(n, {i, j, k}))])
                        ok = false;
                }
    }

    // Weyl pair on M_N passes the strict-action relations.
    long long N = 5;
    size_t dim = static_cast<size_t>(N);
    std::vector<long long> shift_src(dim);
    std::vector<Phase> clock_ph(dim), flat(dim);
    for (size_t i = 0; i < dim; ++i) {
        shift_src[i] = static_cast<long long>((i + 1) % dim);
        clock_ph[i] = Phase(Rational(static_cast<long long>(i), N));
    }
    linalg::Monomial clock(
        [&] {
            std::vector<long long> id(dim);
            for (size_t i = 0; i < dim; ++i) id[i] = static_cast<long long>(i);
            return id;
        }(),
        clock_ph);
    linalg::Monomial shift(shift_src, flat);
    brauer::StrictActionData d;
    d.n = 2;
    d.dim = dim;
    for (long long s0 = 0; s0 < 2; ++s0)
        for (long long s1 = 0; s1 < 2; ++s1) {
            linalg::Monomial u = linalg::Monomial::identity(dim);
            for (long long r = 0; r < s0; ++r) u = u.compose(clock);
            for (long long r = 0; r < s1; ++r) u = u.compose(shift);
            d.alpha.emplace(brauer::LatticeVec{s0, s1}, linalg::Unitary(u));
        }
    for (long long w = -2; w <= 2; ++w)
        d.ubar.emplace(brauer::LatticeVec{w}, linalg::Unitary(linalg::Monomial::identity(dim)));
    if (!brauer::check_strict_action(d).ok()) ok = false;

    return SuiteResult{"brauer", ok, elapsed_ms(start), json::object()};
}

SuiteResult run_fellbundle(const Options& opts) {
    auto start = Clock::now();
    std::mt19937_64 rng(opts.seed);
    bool ok = true;
    int n = 3;
    long long N = opts.stress ? 8 : 4;
    fell::Grid g(n, N);
    fell::GridTricharacter chi(n, N, {1});
    double tol = opts.stress ? 1e-12 : 0.0;

    auto axioms = fell::check_action_axioms(chi, {opts.stress ? 10 : 30, false, opts.seed});
    if (!axioms.ok()) ok = false;

    for (int rep = 0; rep < (opts.stress ? 3 : 20); ++rep) {
        fell::Kernel K1(g), K2(g);
        std::uniform_int_distribution<int> dv(-3, 3);
        for (auto& z : K1.data) z = fell::cplx(dv(rng), dv(rng));
        for (auto& z : K2.data) z = fell::cplx(dv(rng), dv(rng));
        // the kernel picture and the section picture agree
        auto via_kernel = fell::phi(fell::kernel_mult(K1, K2, chi));
        auto via_section = fell::convolve(fell::phi(K1), fell::phi(K2), chi);
        if (via_kernel.max_diff(via_section) > tol) ok = false;
        // involutions correspond
        if (fell::involute(fell::phi(K1)).max_diff(fell::phi(fell::kernel_adjoint(K1))) > tol)
            ok = false;
        // isometry and the two norm formulas
        auto f = fell::phi(K1);
        if (std::fabs(fell::hs_norm(f) - fell::hs_norm_via_convolution(f, chi)) > 1e-12 *
                std::max(1.0, fell::hs_norm(f)))
            ok = false;
        double rss = 0;
        for (auto& z : K1.data) rss += std::norm(z);
        if (std::fabs(fell::hs_norm(f) - std::sqrt(rss)) > 1e-12 * std::max(1.0, std::sqrt(rss)))
            ok = false;
    }
    json details{{"N", N}};
    return SuiteResult{"fellbundle", ok, elapsed_ms(start), details};
}

std::vector<SuiteResult> run_all(const Options& opts, const std::string& only) {
    std::vector<SuiteResult> out;
    auto want = [&](const char* name) { return only.empty() || only == name; };
    if (want("exterior")) out.push_back(run_exterior(opts));
    if (want("twogroup")) out.push_back(run_twogroup(opts));
    if (want("cohomology")) out.push_back(run_cohomology(opts));
    if (want("brauer")) out.push_back(run_brauer(opts));
    if (want("fellbundle")) out.push_back(run_fellbundle(opts));
    return out;
}

} // namespace tori::selftest
