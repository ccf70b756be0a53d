#pragma once

#include <map>
#include <random>
#include <set>
#include <string>

#include "tori/cohomology.hpp"
#include "tori/report.hpp"
#include "tori/unitary.hpp"

namespace tori::brauer {

using cohomology::Cocycle2;
using cohomology::LatticeVec;
using cohomology::ObstructionFunction;
using cohomology::PhaseMatrix;
using cohomology::Tricharacter;
using linalg::Monomial;
using linalg::Unitary;

// A fiber action: the pair (omega, U) of a cocycle on Z^n and a
// tricharacter, subject to the normalization and defect conditions.
struct FiberAction {
    Cocycle2 omega;
    Tricharacter U;

    FiberAction(Cocycle2 o, Tricharacter u) : omega(std::move(o)), U(std::move(u)) {
        if (omega.n() != U.n()) throw std::invalid_argument("dimension mismatch");
    }
    int n() const { return omega.n(); }

    json to_json() const { return json{{"omega", omega.to_json()}, {"U", U.to_json()}}; }
    static FiberAction from_json(const json& j, Mode mode) {
        return FiberAction(Cocycle2::from_json(j.at("omega"), mode),
                           Tricharacter::from_json(j.at("U"), mode));
    }
};

FiberAction product(const FiberAction& a, const FiberAction& b);

// The invariant of a fiber action: an integer vector m over the grade-3
// basis together with the antisymmetric pairing theta.
struct BrauerClass {
    int n;
    std::vector<long long> m;  // length C(n,3)
    PhaseMatrix theta;

    BrauerClass(int n_, std::vector<long long> m_, PhaseMatrix theta_);

    static BrauerClass zero(int n_);

    bool operator==(const BrauerClass& o) const {
        return n == o.n && m == o.m && theta.equals(o.theta);
    }

    json to_json() const;
    static BrauerClass from_json(const json& j, Mode mode);
};

// Checks normalization, the homomorphism property of U, the twisted cocycle
// condition on box triples, and integrality of U on the grade-3 lattice.
// For standard-form cocycles whose box enumeration would be too large, the
// triple check uses the exact bilinear reduction, which covers all triples.
CheckReport validate_fiber_action(const FiberAction& a, long long box);

BrauerClass classify(const FiberAction& a);

BrauerClass brauer_mul(const BrauerClass& x, const BrauerClass& y);
BrauerClass brauer_inv(const BrauerClass& x);

// Restriction to the 3-subtorus on coordinates i<j<k (0-based); the sign
// convention takes +e_i^e_j^e_k.
BrauerClass restrict_subtorus(const BrauerClass& x, int i, int j, int k);

std::vector<long long> dd_class(const BrauerClass& x);
PhaseMatrix mackey(const BrauerClass& x);

FiberAction action_from_obstruction(const std::vector<long long>& m, const PhaseMatrix& theta);

// ---------------------------------------------------------------------------
// Projective representation on the finite periodic model.

// An element (k, eta) of the discrete Heisenberg-type group Z^n x Lambda^2,
// with multiplication (k1+k2, eta1+eta2+k1^k2).
struct LatticeH1 {
    LatticeVec k;
    LatticeVec eta;
};

LatticeH1 lattice_h1_mul(const LatticeH1& a, const LatticeH1& b);

// The representation acts on functions of (k mod N, eta mod N):
//   (W_g f)(x) = exp(2 pi i omega'(x, g)) f(x g),
// where omega'((k1,e1),(k2,e2)) = U(k1 ^ e2) + omega(k1, k2) as phases.
// All phases must lie in (1/N)Z so the periodic wrap is exact.
class InducedRep {
public:
    InducedRep(const FiberAction& action, long long N);

    int n() const { return n_; }
    long long N() const { return N_; }
    size_t dim() const { return dim_; }          // N^n * N^ell
    size_t reduced_dim() const { return rdim_; } // N^n

    Phase omega_prime(const LatticeH1& g1, const LatticeH1& g2) const;

    Monomial weyl(const LatticeH1& g) const;
    // Restriction to functions of k alone, which the eta translations fix.
    Monomial weyl_reduced(const LatticeH1& g) const;
    // The unitary for (theta, xi) in the second layer:
    //   (u f)(k, eta) = exp(2 pi i U(xi + k ^ theta)) f(k, eta + theta).
    Monomial u_op(const LatticeVec& theta, const LatticeVec& xi) const;

    // Verifies W(g1) W(g2) = omega'(g1,g2) W(g1 g2) together with the
    // two layer-exchange relations on random samples; exact phases.
    CheckReport verify_relations(int samples, std::mt19937_64& rng) const;

private:
    Phase u_phase(const LatticeVec& xi3) const;         // U on grade-3 lattice
    Phase omega_phase(const LatticeVec& k, const LatticeVec& l) const;
    size_t index(const LatticeVec& k, const LatticeVec& eta) const;
    LatticeH1 element_at(size_t idx) const;

    int n_;
    long long N_;
    int ell_;
    size_t rdim_;
    size_t dim_;
    std::vector<std::vector<Rational>> theta_hat_;  // exact, entries in (1/N)Z
    std::vector<Rational> c_;                       // U coefficients, in (1/N)Z
};

// ---------------------------------------------------------------------------
// Strict-action relation checker.

struct StrictActionData {
    int n = 0;
    size_t dim = 0;
    // alpha: conjugation automorphisms Ad(u) indexed by sample points of
    // the translation group; u-bar: unitaries indexed by grade-2 lattice
    // coefficient vectors.
    std::map<LatticeVec, Unitary> alpha;
    std::map<LatticeVec, Unitary> ubar;

    static StrictActionData from_json(const json& j, Mode mode);
};

CheckReport check_strict_action(const StrictActionData& d, size_t max_tuples = 4096);

// ---------------------------------------------------------------------------
// Families over a finite base and the duality decision.

struct FamilyOverBase {
    int n = 0;
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::vector<std::string>> loops;
    std::map<std::string, BrauerClass> classes;

    void validate() const;  // throws on contract violations

    json to_json() const;
    static FamilyOverBase from_json(const json& j, Mode mode);
};

// Winding of the independent theta entries around a loop: the sum of short
// lifts of the per-edge phase steps, one integer per entry (i<j).
std::vector<long long> mackey_winding(const FamilyOverBase& f,
                                      const std::vector<std::string>& loop);

enum class DualityKind { Classical, NoncommutativeTorusBundle, NonassociativeOnly };

struct DualityDecision {
    DualityKind kind;
    json evidence;
    json to_json() const;
};

DualityDecision t_duality_decision(const FamilyOverBase& f);

} // namespace tori::brauer
