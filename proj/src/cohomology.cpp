#include "tori/cohomology.hpp"

namespace tori::cohomology {

PhaseMatrix::PhaseMatrix(int n, std::vector<Phase> entries, bool validate_antisym)
    : n_(n), entries_(std::move(entries)) {
    if (entries_.size() != static_cast<size_t>(n) * n)
        throw std::invalid_argument("phase matrix must be n x n");
    if (validate_antisym && !is_antisymmetric())
        throw std::invalid_argument("phase matrix is not antisymmetric mod 1");
}

bool PhaseMatrix::is_antisymmetric(double tol) const {
    for (int i = 0; i < n_; ++i) {
        if (!at(i, i).is_zero(tol)) return false;
        for (int j = i + 1; j < n_; ++j)
            if (!(at(i, j) + at(j, i)).is_zero(tol)) return false;
    }
    return true;
}

bool PhaseMatrix::equals(const PhaseMatrix& o, double tol) const {
    if (n_ != o.n_) return false;
    for (size_t i = 0; i < entries_.size(); ++i)
        if (!entries_[i].equals(o.entries_[i], tol)) return false;
    return true;
}

bool PhaseMatrix::is_zero(double tol) const {
    for (const auto& e : entries_)
        if (!e.is_zero(tol)) return false;
    return true;
}

PhaseMatrix PhaseMatrix::operator+(const PhaseMatrix& o) const {
    if (n_ != o.n_) throw std::invalid_argument("dimension mismatch");
    PhaseMatrix r(n_);
    for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] + o.entries_[i];
    return r;
}

PhaseMatrix PhaseMatrix::operator-() const {
    PhaseMatrix r(n_);
    for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = -entries_[i];
    return r;
}

std::vector<Phase> PhaseMatrix::upper_entries() const {
    std::vector<Phase> out;
    out.reserve(static_cast<size_t>(exterior::basis_size(n_, 2)));
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) out.push_back(at(i, j));
    return out;
}

json PhaseMatrix::to_json() const {
    json rows = json::array();
    for (int i = 0; i < n_; ++i) {
        json row = json::array();
        for (int j = 0; j < n_; ++j) row.push_back(phase_to_json(at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

PhaseMatrix PhaseMatrix::from_json(const json& j, Mode mode) {
    if (!j.is_array()) throw std::invalid_argument("theta must be an array of rows");
    int n = static_cast<int>(j.size());
    PhaseMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(j[i].size()) != n)
            throw std::invalid_argument("theta must be square");
        for (int k = 0; k < n; ++k) m.set(i, k, phase_from_json(j[i][k], mode));
    }
    if (!m.is_antisymmetric()) throw std::invalid_argument("theta is not antisymmetric mod 1");
    return m;
}

PhaseTable::PhaseTable(int n, long long box) : n_(n), box_(box) {
    if (n <= 0 || box < 0) throw std::invalid_argument("bad table shape");
    side_ = 2 * box + 1;
    points_ = 1;
    for (int i = 0; i < n; ++i) {
        points_ *= side_;
        if (points_ > (1LL << 26)) throw std::invalid_argument("table box too large");
    }
}

bool PhaseTable::in_box(const LatticeVec& k) const {
    if (static_cast<int>(k.size()) != n_) return false;
    for (long long v : k)
        if (v < -box_ || v > box_) return false;
    return true;
}

long long PhaseTable::index(const LatticeVec& k) const {
    if (!in_box(k)) throw std::out_of_range("lattice point outside the declared box");
    long long idx = 0;
    for (int i = 0; i < n_; ++i) idx = idx * side_ + (k[i] + box_);
    return idx;
}

LatticeVec PhaseTable::point(long long idx) const {
    LatticeVec k(n_);
    for (int i = n_ - 1; i >= 0; --i) {
        k[i] = idx % side_ - box_;
        idx /= side_;
    }
    return k;
}

Cocycle2 Cocycle2::trivial(int n) {
    Cocycle2 c;
    c.n_ = n;
    c.standard_ = true;
    c.theta_hat_.assign(static_cast<size_t>(n), std::vector<Phase>(static_cast<size_t>(n)));
    return c;
}

Cocycle2 Cocycle2::standard(int n, std::vector<std::vector<Phase>> theta_hat) {
    if (static_cast<int>(theta_hat.size()) != n)
        throw std::invalid_argument("theta_hat must be n x n");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(theta_hat[i].size()) != n)
            throw std::invalid_argument("theta_hat must be n x n");
        for (int j = 0; j <= i; ++j)
            if (!theta_hat[i][j].is_zero())
                throw std::invalid_argument("theta_hat must be strictly upper triangular");
    }
    Cocycle2 c;
    c.n_ = n;
    c.standard_ = true;
    c.theta_hat_ = std::move(theta_hat);
    return c;
}

Cocycle2 Cocycle2::table(int n, long long box, std::vector<Phase> values) {
    PhaseTable shape(n, box);
    Cocycle2 c;
    c.n_ = n;
    c.standard_ = false;
    c.box_ = box;
    if (values.size() != static_cast<size_t>(shape.points()) * shape.points())
        throw std::invalid_argument("table size must be (2B+1)^(2n)");
    c.values_ = std::move(values);
    return c;
}

long long Cocycle2::table_index(const LatticeVec& k, const LatticeVec& l) const {
    PhaseTable shape(n_, box_);
    return shape.index(k) * shape.points() + shape.index(l);
}

Phase Cocycle2::at(const LatticeVec& k, const LatticeVec& l) const {
    if (static_cast<int>(k.size()) != n_ || static_cast<int>(l.size()) != n_)
        throw std::invalid_argument("dimension mismatch");
    if (standard_) {
        bool have = false;
        Phase acc;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) {
                Phase term = theta_hat_[i][j].scale(k[i] * l[j]);
                acc = have ? acc + term : term;
                have = true;
            }
        return acc;
    }
    return values_[static_cast<size_t>(table_index(k, l))];
}

Cocycle2 operator*(const Cocycle2& a, const Cocycle2& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("dimension mismatch");
    if (a.standard_ && b.standard_) {
        Cocycle2 c = Cocycle2::trivial(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int j = i + 1; j < a.n_; ++j)
                c.theta_hat_[i][j] = a.theta_hat_[i][j] + b.theta_hat_[i][j];
        return c;
    }
    long long box = a.standard_ ? b.box_ : (b.standard_ ? a.box_ : std::min(a.box_, b.box_));
    PhaseTable shape(a.n_, box);
    std::vector<Phase> values(static_cast<size_t>(shape.points()) * shape.points());
    for (long long ik = 0; ik < shape.points(); ++ik) {
        LatticeVec k = shape.point(ik);
        for (long long il = 0; il < shape.points(); ++il) {
            LatticeVec l = shape.point(il);
            values[static_cast<size_t>(ik * shape.points() + il)] = a.at(k, l) + b.at(k, l);
        }
    }
    return Cocycle2::table(a.n_, box, std::move(values));
}

json Cocycle2::to_json() const {
    if (standard_) {
        json rows = json::array();
        for (int i = 0; i < n_; ++i) {
            json row = json::array();
            for (int j = 0; j < n_; ++j) row.push_back(phase_to_json(theta_hat_[i][j]));
            rows.push_back(row);
        }
        return json{{"form", "standard"}, {"n", n_}, {"theta_hat", rows}};
    }
    json vals = json::array();
    for (const auto& v : values_) vals.push_back(phase_to_json(v));
    return json{{"form", "table"}, {"n", n_}, {"box", box_}, {"values", vals}};
}

Cocycle2 Cocycle2::from_json(const json& j, Mode mode) {
    std::string form = j.at("form").get<std::string>();
    int n = j.at("n").get<int>();
    if (form == "standard") {
        const json& rows = j.at("theta_hat");
        std::vector<std::vector<Phase>> th(static_cast<size_t>(n),
                                           std::vector<Phase>(static_cast<size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) th[i][k] = phase_from_json(rows.at(i).at(k), mode);
        return standard(n, std::move(th));
    }
    if (form == "table") {
        long long box = j.at("box").get<long long>();
        std::vector<Phase> vals;
        for (const auto& v : j.at("values")) vals.push_back(phase_from_json(v, mode));
        return table(n, box, std::move(vals));
    }
    throw std::invalid_argument("cocycle form must be 'standard' or 'table'");
}

Tricharacter::Tricharacter(int n, std::vector<Scalar> c) : n_(n), c_(std::move(c)) {
    if (c_.size() != static_cast<size_t>(exterior::basis_size(n, 3)))
        throw std::invalid_argument("tricharacter coefficient count must be C(n,3)");
}

Tricharacter Tricharacter::trivial(int n) {
    return Tricharacter(n, std::vector<Scalar>(static_cast<size_t>(exterior::basis_size(n, 3))));
}

Tricharacter Tricharacter::from_integral(int n, const std::vector<long long>& m) {
    std::vector<Scalar> c;
    c.reserve(m.size());
    for (long long v : m) c.push_back(Scalar(v));
    return Tricharacter(n, std::move(c));
}

bool Tricharacter::is_integral(double tol) const {
    for (const auto& s : c_)
        if (!s.is_integer(tol)) return false;
    return true;
}

std::vector<long long> Tricharacter::integral_coeffs(double tol) const {
    if (!is_integral(tol))
        throw std::domain_error("tricharacter is not trivial on the grade-3 lattice");
    std::vector<long long> out;
    out.reserve(c_.size());
    for (const auto& s : c_) out.push_back(s.round());
    return out;
}

Scalar Tricharacter::pair_lattice(const LatticeVec& xi) const {
    if (xi.size() != c_.size()) throw std::invalid_argument("grade-3 coefficient count mismatch");
    Scalar acc = c_.empty() || c_[0].exact() ? Scalar(0) : Scalar(0.0);
    for (size_t i = 0; i < c_.size(); ++i) acc += c_[i].scale(xi[i]);
    return acc;
}

Phase Tricharacter::eval_lattice(const LatticeVec& xi) const { return Phase(pair_lattice(xi)); }

Phase Tricharacter::eval(const exterior::MultiVector& xi) const {
    if (xi.grade() != 3 || xi.n() != n_) throw std::invalid_argument("expected a grade-3 element");
    if (!c_.empty() && !c_[0].exact()) {
        double acc = 0;
        for (size_t i = 0; i < c_.size(); ++i) acc += c_[i].to_double() * xi[i].to_double();
        return Phase(acc);
    }
    Scalar acc = Scalar(0);
    for (size_t i = 0; i < c_.size(); ++i) acc += c_[i] * Scalar(xi[i]);
    return Phase(acc);
}

Tricharacter operator*(const Tricharacter& a, const Tricharacter& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("dimension mismatch");
    std::vector<Scalar> c;
    c.reserve(a.c_.size());
    for (size_t i = 0; i < a.c_.size(); ++i) c.push_back(a.c_[i] + b.c_[i]);
    return Tricharacter(a.n_, std::move(c));
}

json Tricharacter::to_json() const {
    return json{{"n", n_}, {"c", scalars_to_json(c_)}, {"integral", is_integral()}};
}

Tricharacter Tricharacter::from_json(const json& j, Mode mode) {
    int n = j.at("n").get<int>();
    Tricharacter t(n, scalars_from_json(j.at("c"), mode));
    if (j.contains("integral") && j.at("integral").get<bool>() && !t.is_integral())
        throw std::invalid_argument("tricharacter declared integral but is not");
    return t;
}

void ObstructionFunction::set(const std::string& point, std::vector<Scalar> value) {
    if (value.size() != static_cast<size_t>(exterior::basis_size(n_, grade_)))
        throw std::invalid_argument("obstruction value has wrong length");
    values_[point] = std::move(value);
}

const std::vector<Scalar>& ObstructionFunction::at(const std::string& point) const {
    auto it = values_.find(point);
    if (it == values_.end()) throw std::out_of_range("unknown base point: " + point);
    return it->second;
}

bool ObstructionFunction::vanishes(double tol) const {
    for (const auto& [_, v] : values_)
        for (const auto& s : v)
            if (!s.is_zero(tol)) return false;
    return true;
}

json ObstructionFunction::to_json() const {
    json pts = json::object();
    for (const auto& [name, v] : values_) pts[name] = scalars_to_json(v);
    return json{{"n", n_}, {"grade", grade_}, {"points", pts}};
}

ObstructionFunction ObstructionFunction::from_json(const json& j, Mode mode) {
    ObstructionFunction f(j.at("n").get<int>(), j.at("grade").get<int>());
    for (const auto& [name, v] : j.at("points").items()) f.set(name, scalars_from_json(v, mode));
    return f;
}

Cocycle2 coboundary1(const PhaseMap& V, long long out_box) {
    LatticeVec zero(static_cast<size_t>(V.n()), 0);
    if (!V.at(zero).is_zero()) throw std::invalid_argument("V(0) must be 1");
    if (2 * out_box > V.box())
        throw std::invalid_argument("sample box too small for requested output range");
    PhaseTable shape(V.n(), out_box);
    std::vector<Phase> values(static_cast<size_t>(shape.points()) * shape.points());
    for (long long ik = 0; ik < shape.points(); ++ik) {
        LatticeVec k = shape.point(ik);
        for (long long il = 0; il < shape.points(); ++il) {
            LatticeVec l = shape.point(il);
            LatticeVec kl(k.size());
            for (size_t i = 0; i < k.size(); ++i) kl[i] = k[i] + l[i];
            values[static_cast<size_t>(ik * shape.points() + il)] =
                V.at(k) + V.at(l) - V.at(kl);
        }
    }
    return Cocycle2::table(V.n(), out_box, std::move(values));
}

Phase cocycle_defect(const Cocycle2& omega, const Tricharacter& U, const LatticeVec& k,
                     const LatticeVec& l, const LatticeVec& m) {
    LatticeVec kl(k.size()), lm(k.size());
    for (size_t i = 0; i < k.size(); ++i) {
        kl[i] = k[i] + l[i];
        lm[i] = l[i] + m[i];
    }
    Phase lhs = omega.at(kl, m) + omega.at(k, l) + U.eval_lattice(exterior::wedge3_int(k, l, m));
    Phase rhs = omega.at(k, lm) + omega.at(l, m);
    return lhs - rhs;
}

PhaseMatrix commutator_pairing(const Cocycle2& omega) {
    int n = omega.n();
    PhaseMatrix theta(n);
    LatticeVec ei(static_cast<size_t>(n), 0), ej(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            ei[static_cast<size_t>(i)] = 1;
            ej[static_cast<size_t>(j)] = 1;
            theta.set_pair(i, j, omega.at(ei, ej) - omega.at(ej, ei));
            ei[static_cast<size_t>(i)] = 0;
            ej[static_cast<size_t>(j)] = 0;
        }
    return theta;
}

bool cohomologous(const Cocycle2& a, const Cocycle2& b, double tol) {
    return commutator_pairing(a).equals(commutator_pairing(b), tol);
}

Cocycle2 standard_cocycle(const PhaseMatrix& theta) {
    if (!theta.is_antisymmetric())
        throw std::invalid_argument("theta is not antisymmetric mod 1");
    int n = theta.n();
    std::vector<std::vector<Phase>> th(static_cast<size_t>(n),
                                       std::vector<Phase>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) th[i][j] = theta.at(i, j);
    return Cocycle2::standard(n, std::move(th));
}

Scalar cocycle_from_obstruction(const ObstructionFunction& chi,
                                const std::vector<exterior::MultiVector>& ts,
                                const std::string& point) {
    if (static_cast<int>(ts.size()) != chi.grade())
        throw std::invalid_argument("need one grade-1 vector per form slot");
    exterior::MultiVector w = ts.at(0);
    for (size_t i = 1; i < ts.size(); ++i) w = exterior::wedge(w, ts[i]);
    const auto& value = chi.at(point);
    Scalar acc = value.empty() || value[0].exact() ? Scalar(0) : Scalar(0.0);
    for (size_t i = 0; i < value.size(); ++i) acc += value[i] * Scalar(w[i]);
    return acc;
}

Scalar cocycle_from_obstruction_d(const ObstructionFunction& chi,
                                  const std::vector<exterior::MultiVectorD>& ts,
                                  const std::string& point) {
    if (static_cast<int>(ts.size()) != chi.grade())
        throw std::invalid_argument("need one grade-1 vector per form slot");
    exterior::MultiVectorD w = ts.at(0);
    for (size_t i = 1; i < ts.size(); ++i) w = exterior::wedge(w, ts[i]);
    const auto& value = chi.at(point);
    Scalar acc(0.0);
    for (size_t i = 0; i < value.size(); ++i) acc += Scalar(value[i].to_double() * w[i]);
    return acc;
}

} // namespace tori::cohomology
