#pragma once

#include <optional>
#include <random>

#include "tori/exterior.hpp"
#include "tori/report.hpp"

namespace tori::twogroup {

using exterior::MultiVector;

// (t, eta) with t of grade 1 and eta of grade 2.  Multiplication carries
// the wedge twist (t1+t2, eta1+eta2+t1^t2).
struct H1Element {
    MultiVector t;
    MultiVector eta;

    H1Element(MultiVector t_, MultiVector eta_) : t(std::move(t_)), eta(std::move(eta_)) {
        if (t.grade() != 1 || eta.grade() != 2) throw std::invalid_argument("H1 grades are (1,2)");
        if (t.n() != eta.n()) throw std::invalid_argument("dimension mismatch");
    }
    static H1Element identity(int n) { return H1Element(MultiVector(n, 1), MultiVector(n, 2)); }
    int n() const { return t.n(); }

    friend bool operator==(const H1Element& a, const H1Element& b) {
        return a.t == b.t && a.eta == b.eta;
    }
};

// (theta, xi) with theta of grade 2 and xi of grade 3; componentwise group.
struct H2Element {
    MultiVector theta;
    MultiVector xi;

    H2Element(MultiVector theta_, MultiVector xi_) : theta(std::move(theta_)), xi(std::move(xi_)) {
        if (theta.grade() != 2 || xi.grade() != 3)
            throw std::invalid_argument("H2 grades are (2,3)");
        if (theta.n() != xi.n()) throw std::invalid_argument("dimension mismatch");
    }
    static H2Element identity(int n) { return H2Element(MultiVector(n, 2), MultiVector(n, 3)); }
    int n() const { return theta.n(); }

    friend bool operator==(const H2Element& a, const H2Element& b) {
        return a.theta == b.theta && a.xi == b.xi;
    }
};

enum class XiModulus { None, Lattice };

// An endo-bigon of the slim 2-group: a grade-3 value xi sitting at the
// arrow t.  Source and range coincide by construction.  The optional
// modulus declares xi to be taken mod the grade-3 integer lattice.
struct GBigon {
    MultiVector t;
    MultiVector xi;
    XiModulus modulus = XiModulus::None;

    GBigon(MultiVector t_, MultiVector xi_, XiModulus mod = XiModulus::None)
        : t(std::move(t_)), xi(std::move(xi_)), modulus(mod) {
        if (t.grade() != 1 || xi.grade() != 3)
            throw std::invalid_argument("bigon grades are (1,3)");
        if (t.n() != xi.n()) throw std::invalid_argument("dimension mismatch");
        reduce();
    }
    int n() const { return t.n(); }

    void reduce() {
        if (modulus != XiModulus::Lattice) return;
        for (size_t i = 0; i < xi.coeffs().size(); ++i) xi[i] = xi[i].mod1();
    }

    friend bool operator==(const GBigon& a, const GBigon& b) {
        return a.t == b.t && a.xi == b.xi && a.modulus == b.modulus;
    }
};

H1Element h1_mul(const H1Element& a, const H1Element& b);
H1Element h1_inv(const H1Element& a);
H2Element h2_mul(const H2Element& a, const H2Element& b);
H2Element h2_inv(const H2Element& a);

// Boundary of the crossed module: (theta, xi) -> (0, theta).
H1Element boundary(const H2Element& h);

// Conjugation action of H1 on H2: (theta, xi) -> (theta, xi + t ^ theta).
H2Element conj(const H1Element& g, const H2Element& h);

// Horizontal composite of bigons in the strict 2-group: h * c_{src}(k).
H2Element h2_horizontal(const H2Element& h, const H1Element& source_of_h, const H2Element& k);

// Associator bigon of the slim 2-group at t1+t2+t3, with xi = -t1^t2^t3.
GBigon g_associator(const MultiVector& t1, const MultiVector& t2, const MultiVector& t3,
                    XiModulus mod = XiModulus::None);

// The embedding of the slim 2-group into the crossed-module 2-group.
H1Element iota(const MultiVector& t);
H2Element iota_bigon(const GBigon& b);
H2Element omega_iota(const MultiVector& t1, const MultiVector& t2);

// The projection back, and its multiplication bigon.
MultiVector pi(const H1Element& g);
GBigon pi_bigon(const H2Element& h, const H1Element& at, XiModulus mod = XiModulus::None);
GBigon omega_pi(const H1Element& a, const H1Element& b, XiModulus mod = XiModulus::None);

// The connecting bigon (t,eta) => (t,0), with value (-eta, 0).  Orientation
// is fixed by requiring iota∘pi to agree with conjugation by phi.
H2Element phi(const H1Element& g);

// Closed form for the multiplication bigon of iota∘pi: (-t1^t2, t1^eta2).
H2Element omega_iota_pi(const H1Element& a, const H1Element& b);

struct CrossedModuleSample {
    H1Element h1;
    H2Element h2;
    H2Element h2b;
};

struct CoherenceSample {
    std::vector<MultiVector> ts;  // four grade-1 vectors
    H1Element g1;
    H1Element g2;
};

struct CheckOptions {
    // Negative controls: deliberately corrupt one map so the checker's
    // sensitivity can be exercised end to end.
    bool corrupt_conj = false;
    bool corrupt_associator_sign = false;
    XiModulus modulus = XiModulus::None;
};

CheckReport check_crossed_module(const std::vector<CrossedModuleSample>& samples,
                                 const CheckOptions& opts = {});
CheckReport check_coherence(const std::vector<CoherenceSample>& samples,
                            const CheckOptions& opts = {});

// Deterministic random samples with small rational coefficients.
MultiVector random_multivector(int n, int grade, std::mt19937_64& rng);
H1Element random_h1(int n, std::mt19937_64& rng);
H2Element random_h2(int n, std::mt19937_64& rng);
std::vector<CrossedModuleSample> random_crossed_module_samples(int n, int count,
                                                               std::mt19937_64& rng);
std::vector<CoherenceSample> random_coherence_samples(int n, int count, std::mt19937_64& rng);

json h1_to_json(const H1Element& g);
json h2_to_json(const H2Element& h);
H1Element h1_from_json(const json& j);
H2Element h2_from_json(const json& j);

} // namespace tori::twogroup
