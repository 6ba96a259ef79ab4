#include "masseylab/algebra.hpp"

#include "masseylab/expr.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace masseylab {

namespace {

const std::vector<std::string> kNoNames;

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

std::string pair_witness(const Algebra& a, int di, std::size_t i, int dj, std::size_t j) {
    return "(" + a.basis_name(di, i) + ", " + a.basis_name(dj, j) + ")";
}

} // namespace

// --- Cochain ---------------------------------------------------------------

Cochain::Cochain(AlgebraHandle algebra, int degree)
    : algebra_(std::move(algebra)), degree_(degree) {
    if (!algebra_) throw DomainError("cochain over a null algebra");
    if (degree_ < 0 || degree_ > algebra_->degree_bound())
        throw DomainError("cochain degree " + std::to_string(degree_) + " out of range");
    coords_.assign(algebra_->dim(degree_), Rational(0));
}

Cochain::Cochain(AlgebraHandle algebra, int degree, Vec coords)
    : Cochain(std::move(algebra), degree) {
    if (coords.size() != coords_.size())
        throw DomainError("cochain coordinate length mismatch in degree " + std::to_string(degree));
    coords_ = std::move(coords);
}

Cochain Cochain::operator+(const Cochain& rhs) const {
    if (algebra_ != rhs.algebra_) throw DomainError("cochain sum across different algebras");
    if (degree_ != rhs.degree_) throw DomainError("cochain sum across different degrees");
    Cochain out(*this);
    for (std::size_t i = 0; i < coords_.size(); ++i) out.coords_[i] += rhs.coords_[i];
    return out;
}

Cochain Cochain::operator-(const Cochain& rhs) const { return *this + rhs.scaled_by(Rational(-1)); }

Cochain Cochain::operator-() const { return scaled_by(Rational(-1)); }

Cochain Cochain::scaled_by(const Rational& c) const {
    Cochain out(*this);
    for (auto& x : out.coords_) x *= c;
    return out;
}

bool Cochain::operator==(const Cochain& rhs) const {
    return algebra_ == rhs.algebra_ && degree_ == rhs.degree_ && coords_ == rhs.coords_;
}

std::string Cochain::to_string() const {
    if (!algebra_) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        const Rational& c = coords_[i];
        if (c == 0) continue;
        const Rational mag = c < 0 ? Rational(-c) : c;
        const bool unit = degree_ == 0 && i == algebra_->unit_index();
        std::string body;
        if (unit)
            body = rational_to_string(mag);
        else if (mag == 1)
            body = algebra_->basis_name(degree_, i);
        else
            body = rational_to_string(mag) + "*" + algebra_->basis_name(degree_, i);
        if (first) {
            out << (c < 0 ? "-" : "") << body;
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ") << body;
        }
    }
    return first ? "0" : out.str();
}

// --- Algebra accessors -------------------------------------------------------

std::size_t Algebra::dim(int degree) const {
    if (degree < 0 || degree > degree_bound_) return 0;
    return names_[static_cast<std::size_t>(degree)].size();
}

const std::vector<std::string>& Algebra::basis_names(int degree) const {
    if (degree < 0 || degree > degree_bound_) return kNoNames;
    return names_[static_cast<std::size_t>(degree)];
}

const std::string& Algebra::basis_name(int degree, std::size_t index) const {
    const auto& names = basis_names(degree);
    if (index >= names.size()) throw DomainError("basis index out of range");
    return names[index];
}

std::optional<std::pair<int, std::size_t>> Algebra::find_basis_element(
    const std::string& name) const {
    auto it = name_index_.find(name);
    if (it == name_index_.end()) return std::nullopt;
    return it->second;
}

const Vec& Algebra::product_coords(int di, std::size_t i, int dj, std::size_t j) const {
    if (di < 0 || dj < 0 || di + dj > degree_bound_)
        throw DomainError("product of degrees " + std::to_string(di) + " and " +
                          std::to_string(dj) + " exceeds degree bound " +
                          std::to_string(degree_bound_));
    if (i >= dim(di) || j >= dim(dj)) throw DomainError("basis index out of range");
    return products_[static_cast<std::size_t>(di)][static_cast<std::size_t>(dj)]
                    [i * dim(dj) + j];
}

const Matrix& Algebra::differential_matrix(int k) const {
    if (k < 0 || k >= degree_bound_)
        throw DomainError("differential out of degree " + std::to_string(k) +
                          " is not stored (degree bound " + std::to_string(degree_bound_) + ")");
    return differentials_[static_cast<std::size_t>(k)];
}

bool Algebra::same_tables(const Algebra& rhs) const {
    return degree_bound_ == rhs.degree_bound_ && names_ == rhs.names_ &&
           unit_index_ == rhs.unit_index_ && products_ == rhs.products_ &&
           differentials_ == rhs.differentials_;
}

// --- shared builder plumbing -------------------------------------------------

class AlgebraBuilder {
public:
    static std::shared_ptr<Algebra> fresh() { return std::make_shared<Algebra>(); }

    static void init(Algebra& a, Algebra::Backend backend, int degree_bound, std::string label) {
        a.backend_ = backend;
        a.degree_bound_ = degree_bound;
        a.label_ = std::move(label);
        a.names_.assign(static_cast<std::size_t>(degree_bound) + 1, {});
    }

    static void set_names(Algebra& a, int degree, std::vector<std::string> names) {
        a.names_[static_cast<std::size_t>(degree)] = std::move(names);
    }

    static void index_names(Algebra& a) {
        a.name_index_.clear();
        for (int k = 0; k <= a.degree_bound_; ++k)
            for (std::size_t i = 0; i < a.dim(k); ++i) {
                const std::string& nm = a.basis_name(k, i);
                if (nm.empty()) throw DomainError("empty basis element name in degree " +
                                                  std::to_string(k));
                if (!a.name_index_.emplace(nm, std::make_pair(k, i)).second)
                    throw DomainError("duplicate basis element name '" + nm + "'");
            }
    }

    static void set_unit(Algebra& a, std::size_t idx) { a.unit_index_ = idx; }

    static void allocate_tables(Algebra& a) {
        const auto d = static_cast<std::size_t>(a.degree_bound_);
        a.products_.assign(d + 1, std::vector<std::vector<Vec>>(d + 1));
        for (std::size_t di = 0; di <= d; ++di)
            for (std::size_t dj = 0; di + dj <= d; ++dj)
                a.products_[di][dj].assign(
                    a.dim(static_cast<int>(di)) * a.dim(static_cast<int>(dj)),
                    Vec(a.dim(static_cast<int>(di + dj)), Rational(0)));
        a.differentials_.clear();
        for (int k = 0; k < a.degree_bound_; ++k)
            a.differentials_.emplace_back(a.dim(k + 1), a.dim(k));
    }

    static Vec& product(Algebra& a, int di, std::size_t i, int dj, std::size_t j) {
        return a.products_[static_cast<std::size_t>(di)][static_cast<std::size_t>(dj)]
                          [i * a.dim(dj) + j];
    }

    static Matrix& differential(Algebra& a, int k) {
        return a.differentials_[static_cast<std::size_t>(k)];
    }

    static void set_free(Algebra& a, FreeStructure fs) {
        a.free_ = std::make_shared<const FreeStructure>(std::move(fs));
    }
};

namespace {

// coordinates of u * v computed from the tables
Vec mul_coords(const Algebra& a, int di, const Vec& u, int dj, const Vec& v) {
    Vec out(a.dim(di + dj), Rational(0));
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] == 0) continue;
            add_scaled(out, a.product_coords(di, i, dj, j), u[i] * v[j]);
        }
    }
    return out;
}

AxiomReport validate_axioms(const Algebra& a) {
    AxiomReport report;
    const int d = a.degree_bound();
    auto flag = [&](const std::string& axiom, const std::string& witness) {
        report.violations.push_back({axiom, witness});
    };

    // unit acts as the identity
    const std::size_t u = a.unit_index();
    for (int k = 0; k <= d; ++k)
        for (std::size_t i = 0; i < a.dim(k); ++i) {
            ++report.checks_run;
            Vec e(a.dim(k), Rational(0));
            e[i] = 1;
            if (a.product_coords(0, u, k, i) != e)
                flag("unit", "1*" + a.basis_name(k, i) + " != " + a.basis_name(k, i));
            if (a.product_coords(k, i, 0, u) != e)
                flag("unit", a.basis_name(k, i) + "*1 != " + a.basis_name(k, i));
        }

    // graded commutativity, checked on both stored orders
    for (int di = 0; di <= d; ++di)
        for (int dj = di; di + dj <= d; ++dj)
            for (std::size_t i = 0; i < a.dim(di); ++i)
                for (std::size_t j = 0; j < a.dim(dj); ++j) {
                    ++report.checks_run;
                    const int sign = (di % 2 == 1 && dj % 2 == 1) ? -1 : 1;
                    const Vec& uv = a.product_coords(di, i, dj, j);
                    Vec vu = scaled(a.product_coords(dj, j, di, i), Rational(sign));
                    if (uv != vu)
                        flag("graded-commutativity", pair_witness(a, di, i, dj, j));
                }

    // associativity on all basis triples within the bound
    for (int da = 0; da <= d; ++da)
        for (int db = 0; da + db <= d; ++db)
            for (int dc = 0; da + db + dc <= d; ++dc)
                for (std::size_t i = 0; i < a.dim(da); ++i)
                    for (std::size_t j = 0; j < a.dim(db); ++j)
                        for (std::size_t k = 0; k < a.dim(dc); ++k) {
                            ++report.checks_run;
                            Vec left = mul_coords(a, da + db, a.product_coords(da, i, db, j),
                                                  dc, [&] {
                                                      Vec e(a.dim(dc), Rational(0));
                                                      e[k] = 1;
                                                      return e;
                                                  }());
                            Vec eij(a.dim(da), Rational(0));
                            eij[i] = 1;
                            Vec right = mul_coords(a, da, eij, db + dc,
                                                   a.product_coords(db, j, dc, k));
                            if (left != right)
                                flag("associativity",
                                     "(" + a.basis_name(da, i) + ", " + a.basis_name(db, j) +
                                         ", " + a.basis_name(dc, k) + ")");
                        }

    // d^2 = 0 wherever both differentials are stored
    for (int k = 0; k + 2 <= d; ++k) {
        const Matrix& dk = a.differential_matrix(k);
        const Matrix& dk1 = a.differential_matrix(k + 1);
        for (std::size_t col = 0; col < a.dim(k); ++col) {
            ++report.checks_run;
            Vec img(a.dim(k + 1));
            for (std::size_t r = 0; r < img.size(); ++r) img[r] = dk.at(r, col);
            if (!is_zero_vec(dk1.apply(img)))
                flag("d-squared", "d(d(" + a.basis_name(k, col) + ")) != 0");
        }
    }

    // Leibniz rule on basis pairs whose product degree still has a stored d
    for (int di = 0; di <= d; ++di)
        for (int dj = 0; di + dj + 1 <= d; ++dj)
            for (std::size_t i = 0; i < a.dim(di); ++i)
                for (std::size_t j = 0; j < a.dim(dj); ++j) {
                    ++report.checks_run;
                    const Matrix& dprod = a.differential_matrix(di + dj);
                    Vec lhs = dprod.apply(a.product_coords(di, i, dj, j));

                    Vec dei(a.dim(di + 1));
                    for (std::size_t r = 0; r < dei.size(); ++r)
                        dei[r] = a.differential_matrix(di).at(r, i);
                    Vec ej(a.dim(dj), Rational(0));
                    ej[j] = 1;
                    Vec rhs = mul_coords(a, di + 1, dei, dj, ej);

                    Vec dej(a.dim(dj + 1));
                    for (std::size_t r = 0; r < dej.size(); ++r)
                        dej[r] = a.differential_matrix(dj).at(r, j);
                    Vec ei(a.dim(di), Rational(0));
                    ei[i] = 1;
                    add_scaled(rhs, mul_coords(a, di, ei, dj + 1, dej),
                               Rational(di % 2 == 1 ? -1 : 1));

                    if (lhs != rhs) flag("leibniz", pair_witness(a, di, i, dj, j));
                }

    return report;
}

} // namespace

// --- free CDGA ---------------------------------------------------------------

namespace {

struct FreeSkeleton {
    std::vector<GeneratorSpec> gens;              // canonical order
    std::vector<bool> odd;                        // parity per generator
    std::vector<std::vector<std::vector<int>>> monomials; // [degree][idx]
    std::vector<std::map<std::vector<int>, std::size_t>> index; // per degree
};

std::string monomial_name(const FreeSkeleton& sk, const std::vector<int>& exps) {
    std::string out;
    for (std::size_t g = 0; g < exps.size(); ++g) {
        if (exps[g] == 0) continue;
        if (!out.empty()) out += "*";
        out += sk.gens[g].name;
        if (exps[g] > 1) out += "^" + std::to_string(exps[g]);
    }
    return out.empty() ? "1" : out;
}

void enumerate_rec(const FreeSkeleton& sk, std::size_t g, int remaining, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
    if (remaining == 0 && g == sk.gens.size()) {
        out.push_back(cur);
        return;
    }
    if (g == sk.gens.size()) return;
    const int deg = sk.gens[g].degree;
    int max_exp = remaining / deg;
    if (sk.odd[g]) max_exp = std::min(max_exp, 1);
    for (int e = max_exp; e >= 0; --e) {
        cur[g] = e;
        enumerate_rec(sk, g + 1, remaining - e * deg, cur, out);
    }
    cur[g] = 0;
}

// product of two canonical monomials: nullopt when an odd generator squares
// to zero, otherwise the Koszul sign and the merged exponent vector.
std::optional<std::pair<int, std::vector<int>>> monomial_product(const FreeSkeleton& sk,
                                                                 const std::vector<int>& u,
                                                                 const std::vector<int>& v) {
    std::vector<int> prod(u.size());
    long inversions = 0;
    long odd_seen_in_u_after = 0;
    // count pairs (odd j in u, odd i in v) with i < j: each v-factor crosses
    // every canonically later odd u-factor when the concatenation is sorted
    for (std::size_t i = u.size(); i-- > 0;) {
        if (sk.odd[i] && v[i]) inversions += odd_seen_in_u_after;
        if (sk.odd[i] && u[i]) ++odd_seen_in_u_after;
    }
    for (std::size_t g = 0; g < u.size(); ++g) {
        if (sk.odd[g] && u[g] + v[g] > 1) return std::nullopt;
        prod[g] = u[g] + v[g];
    }
    return std::make_pair(inversions % 2 == 0 ? 1 : -1, std::move(prod));
}

} // namespace

AlgebraHandle build_free_cdga(const std::vector<GeneratorSpec>& generators,
                              const std::map<std::string, std::string>& differential,
                              int degree_bound, const std::string& label) {
    if (degree_bound < 1) throw DomainError("degree bound must be at least 1");

    FreeSkeleton sk;
    sk.gens = generators;
    std::stable_sort(sk.gens.begin(), sk.gens.end(),
                     [](const GeneratorSpec& a, const GeneratorSpec& b) {
                         return a.degree < b.degree;
                     });
    std::map<std::string, std::size_t> gen_index;
    for (std::size_t g = 0; g < sk.gens.size(); ++g) {
        const auto& gen = sk.gens[g];
        if (gen.degree < 1)
            throw DomainError("generator '" + gen.name + "' has degree " +
                              std::to_string(gen.degree) + "; degrees must be >= 1");
        if (gen.degree > degree_bound)
            throw DomainError("generator '" + gen.name + "' exceeds the degree bound");
        if (!valid_identifier(gen.name))
            throw DomainError("generator name '" + gen.name + "' is not a valid identifier");
        if (!gen_index.emplace(gen.name, g).second)
            throw DomainError("duplicate generator name '" + gen.name + "'");
        sk.odd.push_back(gen.degree % 2 == 1);
    }
    for (const auto& [name, expr] : differential) {
        (void)expr;
        if (!gen_index.count(name))
            throw DomainError("unknown generator '" + name + "' in differential");
    }

    sk.monomials.resize(static_cast<std::size_t>(degree_bound) + 1);
    sk.index.resize(static_cast<std::size_t>(degree_bound) + 1);
    for (int q = 0; q <= degree_bound; ++q) {
        std::vector<int> cur(sk.gens.size(), 0);
        enumerate_rec(sk, 0, q, cur, sk.monomials[static_cast<std::size_t>(q)]);
        for (std::size_t i = 0; i < sk.monomials[q].size(); ++i)
            sk.index[q].emplace(sk.monomials[q][i], i);
    }

    auto alg = AlgebraBuilder::fresh();
    AlgebraBuilder::init(*alg, Algebra::Backend::free, degree_bound,
                         label.empty() ? "free-cdga" : label);
    for (int q = 0; q <= degree_bound; ++q) {
        std::vector<std::string> names;
        for (const auto& exps : sk.monomials[q]) names.push_back(monomial_name(sk, exps));
        AlgebraBuilder::set_names(*alg, q, std::move(names));
    }
    AlgebraBuilder::index_names(*alg);
    AlgebraBuilder::set_unit(*alg, 0);
    AlgebraBuilder::allocate_tables(*alg);

    for (int di = 0; di <= degree_bound; ++di)
        for (int dj = 0; di + dj <= degree_bound; ++dj)
            for (std::size_t i = 0; i < sk.monomials[di].size(); ++i)
                for (std::size_t j = 0; j < sk.monomials[dj].size(); ++j) {
                    auto prod = monomial_product(sk, sk.monomials[di][i], sk.monomials[dj][j]);
                    if (!prod) continue;
                    Vec& cell = AlgebraBuilder::product(*alg, di, i, dj, j);
                    cell[sk.index[di + dj].at(prod->second)] = prod->first;
                }

    AlgebraHandle handle = alg;

    // parse generator differentials against the multiplicative structure
    std::vector<Cochain> gen_diff;
    std::vector<std::string> diff_sources;
    for (std::size_t g = 0; g < sk.gens.size(); ++g) {
        const auto& gen = sk.gens[g];
        auto it = differential.find(gen.name);
        const std::string src = it == differential.end() ? "0" : it->second;
        diff_sources.push_back(src);
        Cochain value = [&] {
            try {
                return parse_expression(src, handle, gen.degree + 1);
            } catch (const ParseError& e) {
                throw AlgebraError(
                    "non-homogeneous differential for generator '" + gen.name + "': " + e.what(),
                    AxiomReport{{{"differential", gen.name}}, 0});
            }
        }();
        gen_diff.push_back(std::move(value));
    }

    // extend d to monomials by the Leibniz rule
    for (int k = 0; k < degree_bound; ++k) {
        Matrix& dk = AlgebraBuilder::differential(*alg, k);
        for (std::size_t m = 0; m < sk.monomials[k].size(); ++m) {
            const auto& exps = sk.monomials[k][m];
            std::vector<std::size_t> word;
            for (std::size_t g = 0; g < exps.size(); ++g)
                for (int e = 0; e < exps[g]; ++e) word.push_back(g);

            Vec out(alg->dim(k + 1), Rational(0));
            std::vector<int> prefix(exps.size(), 0);
            int prefix_deg = 0;
            for (std::size_t pos = 0; pos < word.size(); ++pos) {
                const std::size_t g = word[pos];
                std::vector<int> suffix(exps);
                for (std::size_t gg = 0; gg < exps.size(); ++gg) suffix[gg] -= prefix[gg];
                suffix[g] -= 1;

                const Cochain& dg = gen_diff[g];
                if (!dg.is_zero()) {
                    const int head_sign = prefix_deg % 2 == 1 ? -1 : 1;
                    const int ddeg = sk.gens[g].degree + 1;
                    for (std::size_t t = 0; t < dg.coords().size(); ++t) {
                        const Rational& c = dg.coords()[t];
                        if (c == 0) continue;
                        auto m1 = monomial_product(sk, prefix, sk.monomials[ddeg][t]);
                        if (!m1) continue;
                        auto m2 = monomial_product(sk, m1->second, suffix);
                        if (!m2) continue;
                        out[sk.index[k + 1].at(m2->second)] +=
                            c * Rational(head_sign * m1->first * m2->first);
                    }
                }
                prefix[g] += 1;
                prefix_deg += sk.gens[g].degree;
            }
            for (std::size_t r = 0; r < out.size(); ++r) dk.at(r, m) = out[r];
        }
    }

    FreeStructure fs;
    fs.generators = sk.gens;
    fs.differential_sources = std::move(diff_sources);
    fs.monomials = sk.monomials;
    AlgebraBuilder::set_free(*alg, std::move(fs));

    // d^2 = 0 on all basis monomials that admit the double differential
    AxiomReport dsq;
    for (int k = 0; k + 2 <= degree_bound; ++k) {
        const Matrix& dk = alg->differential_matrix(k);
        const Matrix& dk1 = alg->differential_matrix(k + 1);
        for (std::size_t col = 0; col < alg->dim(k); ++col) {
            Vec img(alg->dim(k + 1));
            for (std::size_t r = 0; r < img.size(); ++r) img[r] = dk.at(r, col);
            if (!is_zero_vec(dk1.apply(img)))
                dsq.violations.push_back({"d-squared", "d(d(" + alg->basis_name(k, col) +
                                                           ")) != 0"});
        }
    }
    if (!dsq.ok()) throw AlgebraError("d^2 != 0: " + dsq.violations.front().witness, dsq);

    return handle;
}

// --- structure-constant algebras ----------------------------------------------

namespace {

AlgebraHandle build_sc_impl(const ScAlgebraSpec& spec, bool validate) {
    if (spec.degree_bound < 0) throw DomainError("degree bound must be nonnegative");
    const auto d = static_cast<std::size_t>(spec.degree_bound);
    if (spec.basis_by_degree.size() > d + 1)
        for (std::size_t q = d + 1; q < spec.basis_by_degree.size(); ++q)
            if (!spec.basis_by_degree[q].empty())
                throw DomainError("basis elements listed above the degree bound");

    auto alg = AlgebraBuilder::fresh();
    AlgebraBuilder::init(*alg, Algebra::Backend::structure_constants, spec.degree_bound,
                         spec.label.empty() ? "structure-constants" : spec.label);
    for (std::size_t q = 0; q <= d && q < spec.basis_by_degree.size(); ++q)
        AlgebraBuilder::set_names(*alg, static_cast<int>(q), spec.basis_by_degree[q]);
    AlgebraBuilder::index_names(*alg);

    auto unit = alg->find_basis_element(spec.unit);
    if (!unit || unit->first != 0)
        throw DomainError("unit element '" + spec.unit + "' is not a degree-0 basis element");
    AlgebraBuilder::set_unit(*alg, unit->second);
    AlgebraBuilder::allocate_tables(*alg);

    // track which in-range pairs have been provided; unit rows are implied
    std::map<std::pair<std::pair<int, std::size_t>, std::pair<int, std::size_t>>, bool> seen;
    for (int k = 0; k <= spec.degree_bound; ++k)
        for (std::size_t i = 0; i < alg->dim(k); ++i) {
            Vec e(alg->dim(k), Rational(0));
            e[i] = 1;
            AlgebraBuilder::product(*alg, 0, unit->second, k, i) = e;
            AlgebraBuilder::product(*alg, k, i, 0, unit->second) = e;
            seen[{{0, unit->second}, {k, i}}] = true;
            seen[{{k, i}, {0, unit->second}}] = true;
        }

    for (const auto& entry : spec.products) {
        auto left = alg->find_basis_element(entry.left);
        if (!left) throw DomainError("unknown basis element '" + entry.left + "' in product table");
        auto right = alg->find_basis_element(entry.right);
        if (!right)
            throw DomainError("unknown basis element '" + entry.right + "' in product table");
        const int target = left->first + right->first;
        if (target > spec.degree_bound) {
            if (!entry.result.empty())
                throw DomainError("product (" + entry.left + ", " + entry.right +
                                  ") lands above the degree bound but declares a nonzero value");
            continue; // explicit truncation marker, nothing to store
        }
        auto key = std::make_pair(*left, *right);
        auto [it, inserted] = seen.emplace(key, true);
        if (!inserted && !(left->first == 0 && left->second == unit->second) &&
            !(right->first == 0 && right->second == unit->second))
            throw DomainError("duplicate product entry for (" + entry.left + ", " + entry.right +
                              ")");
        Vec cell(alg->dim(target), Rational(0));
        for (const auto& [name, coeff] : entry.result) {
            auto elt = alg->find_basis_element(name);
            if (!elt)
                throw DomainError("unknown basis element '" + name + "' in product result");
            if (elt->first != target)
                throw DomainError("product (" + entry.left + ", " + entry.right +
                                  ") declares a result in the wrong degree");
            cell[elt->second] += coeff;
        }
        AlgebraBuilder::product(*alg, left->first, left->second, right->first, right->second) =
            std::move(cell);
    }

    for (int di = 0; di <= spec.degree_bound; ++di)
        for (int dj = 0; di + dj <= spec.degree_bound; ++dj)
            for (std::size_t i = 0; i < alg->dim(di); ++i)
                for (std::size_t j = 0; j < alg->dim(dj); ++j)
                    if (!seen.count({{di, i}, {dj, j}}))
                        throw DomainError("missing product entry for (" +
                                          alg->basis_name(di, i) + ", " +
                                          alg->basis_name(dj, j) + ")");

    std::map<std::pair<int, std::size_t>, bool> dseen;
    for (const auto& entry : spec.differential) {
        auto elt = alg->find_basis_element(entry.on);
        if (!elt) throw DomainError("unknown basis element '" + entry.on + "' in differential");
        if (!dseen.emplace(*elt, true).second)
            throw DomainError("duplicate differential entry for '" + entry.on + "'");
        const int target = elt->first + 1;
        if (target > spec.degree_bound) {
            if (!entry.result.empty())
                throw DomainError("differential of '" + entry.on +
                                  "' lands above the degree bound");
            continue;
        }
        Matrix& dk = AlgebraBuilder::differential(*alg, elt->first);
        for (const auto& [name, coeff] : entry.result) {
            auto img = alg->find_basis_element(name);
            if (!img)
                throw DomainError("unknown basis element '" + name + "' in differential result");
            if (img->first != target)
                throw DomainError("differential of '" + entry.on +
                                  "' declares a result in the wrong degree");
            dk.at(img->second, elt->second) += coeff;
        }
    }

    AlgebraHandle handle = alg;
    if (validate) {
        AxiomReport report = validate_axioms(*handle);
        if (!report.ok()) {
            std::ostringstream msg;
            msg << "algebra table fails validation (" << report.violations.size()
                << " violation(s)); first: " << report.violations.front().axiom << " at "
                << report.violations.front().witness;
            throw AlgebraError(msg.str(), report);
        }
    }
    return handle;
}

} // namespace

AlgebraHandle build_sc_algebra(const ScAlgebraSpec& spec) { return build_sc_impl(spec, true); }

namespace detail {
AlgebraHandle build_sc_algebra_unchecked(const ScAlgebraSpec& spec) {
    return build_sc_impl(spec, false);
}
} // namespace detail

// --- Hirsch extension ----------------------------------------------------------

AlgebraHandle hirsch_extend(const AlgebraHandle& base, const HirschExtensionSpec& ext) {
    if (!base) throw DomainError("hirsch_extend: null base algebra");
    const int n = ext.generator_degree;
    const int d = base->degree_bound();
    if (n < 1 || n % 2 == 0)
        throw DomainError("Hirsch extension degree must be odd and positive, got " +
                          std::to_string(n));
    if (d < n + 1)
        throw DomainError("degree bound " + std::to_string(d) +
                          " cannot hold the Euler cocycle of degree " + std::to_string(n + 1));
    if (ext.euler_cocycle.algebra() != base)
        throw DomainError("Euler cocycle lives over a different algebra");
    if (ext.euler_cocycle.degree() != n + 1)
        throw DomainError("Euler cocycle has degree " +
                          std::to_string(ext.euler_cocycle.degree()) + ", expected " +
                          std::to_string(n + 1));
    if (n + 1 <= d - 1 && !differentiate(ext.euler_cocycle).is_zero())
        throw DomainError("Euler cocycle is not closed");
    if (!valid_identifier(ext.generator_name))
        throw DomainError("extension generator name '" + ext.generator_name +
                          "' is not a valid identifier");

    const std::string& z = ext.generator_name;
    auto zname = [&](int bdeg, std::size_t bidx) {
        const std::string& nm = base->basis_name(bdeg, bidx);
        if (bdeg == 0 && bidx == base->unit_index()) return z;
        return nm + "*" + z;
    };

    auto alg = AlgebraBuilder::fresh();
    AlgebraBuilder::init(*alg, Algebra::Backend::structure_constants, d,
                         ext.label.empty() ? base->label() + "*L(" + z + ")" : ext.label);
    for (int k = 0; k <= d; ++k) {
        std::vector<std::string> names = base->basis_names(k);
        if (k - n >= 0)
            for (std::size_t b = 0; b < base->dim(k - n); ++b) names.push_back(zname(k - n, b));
        AlgebraBuilder::set_names(*alg, k, std::move(names));
    }
    AlgebraBuilder::index_names(*alg);
    AlgebraBuilder::set_unit(*alg, base->unit_index());
    AlgebraBuilder::allocate_tables(*alg);

    const Vec& euler = ext.euler_cocycle.coords();

    // products: (alpha + beta z)(gamma + delta z)
    //         = alpha gamma + (alpha delta + (-1)^(n |gamma|) beta gamma) z
    for (int di = 0; di <= d; ++di)
        for (int dj = 0; di + dj <= d; ++dj) {
            const int dt = di + dj;
            const std::size_t bi = base->dim(di), bj = base->dim(dj), bt = base->dim(dt);
            for (std::size_t i = 0; i < alg->dim(di); ++i)
                for (std::size_t j = 0; j < alg->dim(dj); ++j) {
                    Vec& cell = AlgebraBuilder::product(*alg, di, i, dj, j);
                    const bool iz = i >= bi, jz = j >= bj;
                    if (iz && jz) continue; // z^2 = 0
                    if (!iz && !jz) {
                        const Vec& p = base->product_coords(di, i, dj, j);
                        for (std::size_t t = 0; t < p.size(); ++t) cell[t] = p[t];
                    } else if (!iz && jz) {
                        const Vec& p = base->product_coords(di, i, dj - n, j - bj);
                        for (std::size_t t = 0; t < p.size(); ++t) cell[bt + t] = p[t];
                    } else {
                        const int sign = (n % 2 == 1 && dj % 2 == 1) ? -1 : 1;
                        const Vec& p = base->product_coords(di - n, i - bi, dj, j);
                        for (std::size_t t = 0; t < p.size(); ++t)
                            cell[bt + t] = Rational(sign) * p[t];
                    }
                }
        }

    // differential: d(alpha + beta z) = d(alpha) + (d beta) z + (-1)^{|beta|} beta e
    for (int k = 0; k < d; ++k) {
        Matrix& dk = AlgebraBuilder::differential(*alg, k);
        const std::size_t bk = base->dim(k);
        const std::size_t bt = base->dim(k + 1);
        const Matrix& base_dk = base->differential_matrix(k);
        for (std::size_t i = 0; i < bk; ++i)
            for (std::size_t r = 0; r < bt; ++r) dk.at(r, i) = base_dk.at(r, i);
        if (k - n >= 0) {
            const int bdeg = k - n;
            for (std::size_t b = 0; b < base->dim(bdeg); ++b) {
                const std::size_t col = bk + b;
                // (d beta) z lands in the z-part of degree k+1
                const Matrix& base_db = base->differential_matrix(bdeg);
                for (std::size_t r = 0; r < base->dim(bdeg + 1); ++r)
                    dk.at(bt + r, col) = base_db.at(r, b);
                // (-1)^{|beta|} beta * e lands in the base part of degree k+1
                const int sign = bdeg % 2 == 1 ? -1 : 1;
                Vec beta(base->dim(bdeg), Rational(0));
                beta[b] = 1;
                Vec prod = mul_coords(*base, bdeg, beta, n + 1, euler);
                for (std::size_t r = 0; r < prod.size(); ++r)
                    dk.at(r, col) += Rational(sign) * prod[r];
            }
        }
    }

    AlgebraHandle handle = alg;
    AxiomReport report = validate_axioms(*handle);
    if (!report.ok())
        throw AlgebraError("Hirsch extension produced an inconsistent table; first: " +
                               report.violations.front().axiom + " at " +
                               report.violations.front().witness,
                           report);
    return handle;
}

// --- public operations -----------------------------------------------------------

Cochain basis_cochain(const AlgebraHandle& a, int degree, std::size_t index) {
    if (!a) throw DomainError("null algebra handle");
    if (index >= a->dim(degree)) throw DomainError("basis index out of range");
    Vec coords(a->dim(degree), Rational(0));
    coords[index] = 1;
    return Cochain(a, degree, std::move(coords));
}

Cochain zero_cochain(const AlgebraHandle& a, int degree) {
    if (!a) throw DomainError("null algebra handle");
    return Cochain(a, degree);
}

Cochain multiply(const Cochain& u, const Cochain& v) {
    if (u.algebra() != v.algebra()) throw DomainError("product of cochains over different algebras");
    const AlgebraHandle& a = u.algebra();
    if (!a) throw DomainError("product of null cochains");
    if (u.degree() + v.degree() > a->degree_bound())
        throw DomainError("product degree " + std::to_string(u.degree() + v.degree()) +
                          " exceeds degree bound " + std::to_string(a->degree_bound()));
    return Cochain(a, u.degree() + v.degree(),
                   mul_coords(*a, u.degree(), u.coords(), v.degree(), v.coords()));
}

Cochain differentiate(const Cochain& u) {
    const AlgebraHandle& a = u.algebra();
    if (!a) throw DomainError("differential of a null cochain");
    if (u.degree() >= a->degree_bound())
        throw DomainError("differential out of degree " + std::to_string(u.degree()) +
                          " is not stored (degree bound " +
                          std::to_string(a->degree_bound()) + ")");
    return Cochain(a, u.degree() + 1, a->differential_matrix(u.degree()).apply(u.coords()));
}

AxiomReport verify_axioms(const AlgebraHandle& a) {
    if (!a) throw DomainError("null algebra handle");
    return validate_axioms(*a);
}

} // namespace masseylab
