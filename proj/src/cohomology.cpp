#include "masseylab/cohomology.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace masseylab {

namespace {

struct DegreeData {
    Subspace cocycles;
    Subspace coboundaries;
    std::vector<Vec> rep_coords; // representatives, coordinates in C^k
    // Columns: representatives first, then the coboundary basis. The columns
    // are linearly independent, so quotient coordinates are unique.
    std::unique_ptr<LinearSolver> quotient;
    // d_k prefactored, for solving d(x) = target with target in degree k+1.
    std::unique_ptr<LinearSolver> primitive;
};

struct AnalysisCache {
    std::map<int, std::shared_ptr<const DegreeData>> degrees;
};

std::shared_ptr<const DegreeData> degree_data(const AlgebraHandle& a, int k) {
    if (k < 0 || k > a->degree_bound() - 1)
        throw DomainError("cohomology is analyzable only in degrees 0 through " +
                          std::to_string(a->degree_bound() - 1) + ", got " + std::to_string(k));

    Algebra::CacheSlot& slot = a->cache_slot();
    std::lock_guard<std::mutex> lock(slot.mutex);
    if (!slot.data) slot.data = std::make_shared<AnalysisCache>();
    auto cache = std::static_pointer_cast<AnalysisCache>(slot.data);
    if (auto it = cache->degrees.find(k); it != cache->degrees.end()) return it->second;

    auto data = std::make_shared<DegreeData>();
    const std::size_t n = a->dim(k);
    const Matrix& dk = a->differential_matrix(k);
    data->primitive = std::make_unique<LinearSolver>(dk);
    data->cocycles = Subspace::from_vectors(n, kernel_basis(dk));

    if (k == 0) {
        data->coboundaries = Subspace(n);
    } else {
        const Matrix& dprev = a->differential_matrix(k - 1);
        std::vector<Vec> images;
        images.reserve(dprev.cols());
        for (std::size_t j = 0; j < dprev.cols(); ++j) {
            Vec col(dprev.rows(), Rational(0));
            for (std::size_t i = 0; i < dprev.rows(); ++i) col[i] = dprev.at(i, j);
            images.push_back(std::move(col));
        }
        data->coboundaries = Subspace::from_vectors(n, images);
    }

    Subspace span = data->coboundaries;
    for (std::size_t i = 0; i < data->cocycles.dim(); ++i) {
        Vec z = data->cocycles.basis_vector(i);
        if (span.member(z)) continue;
        data->rep_coords.push_back(z);
        span = subspace_sum(span, Subspace::from_vectors(n, {z}));
    }

    const std::size_t h = data->rep_coords.size();
    const std::size_t b = data->coboundaries.dim();
    Matrix q(n, h + b);
    for (std::size_t c = 0; c < h; ++c)
        for (std::size_t r = 0; r < n; ++r) q.at(r, c) = data->rep_coords[c][r];
    for (std::size_t c = 0; c < b; ++c) {
        Vec col = data->coboundaries.basis_vector(c);
        for (std::size_t r = 0; r < n; ++r) q.at(r, h + c) = col[r];
    }
    data->quotient = std::make_unique<LinearSolver>(q);

    cache->degrees[k] = data;
    return data;
}

void require_same(const CohomologyClass& u, const CohomologyClass& v) {
    if (u.algebra() != v.algebra())
        throw DomainError("cohomology classes belong to different algebras");
}

} // namespace

CohomologyClass::CohomologyClass(AlgebraHandle algebra, int degree, Vec coords)
    : algebra_(std::move(algebra)), degree_(degree), coords_(std::move(coords)) {
    if (degree_ < 0 || degree_ > max_analyzable_degree(algebra_))
        throw DomainError("cohomology class degree out of analyzable range");
    if (coords_.size() != betti_number(algebra_, degree_))
        throw DomainError("cohomology class coordinate length mismatch");
}

bool CohomologyClass::is_zero() const { return is_zero_vec(coords_); }

Cochain CohomologyClass::representative() const {
    auto data = degree_data(algebra_, degree_);
    Cochain rep = zero_cochain(algebra_, degree_);
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (coords_[i] != 0)
            rep = rep + Cochain(algebra_, degree_, data->rep_coords[i]).scaled_by(coords_[i]);
    return rep;
}

std::string CohomologyClass::to_string() const { return "[" + representative().to_string() + "]"; }

CohomologyClass CohomologyClass::operator+(const CohomologyClass& rhs) const {
    require_same(*this, rhs);
    if (degree_ != rhs.degree_) throw DomainError("cohomology class degree mismatch");
    Vec sum = coords_;
    add_scaled(sum, rhs.coords_, Rational(1));
    return CohomologyClass(algebra_, degree_, std::move(sum));
}

CohomologyClass CohomologyClass::operator-(const CohomologyClass& rhs) const {
    return *this + rhs.scaled_by(Rational(-1));
}

CohomologyClass CohomologyClass::operator-() const { return scaled_by(Rational(-1)); }

CohomologyClass CohomologyClass::scaled_by(const Rational& s) const {
    return CohomologyClass(algebra_, degree_, scaled(coords_, s));
}

bool CohomologyClass::operator==(const CohomologyClass& rhs) const {
    return algebra_ == rhs.algebra_ && degree_ == rhs.degree_ && coords_ == rhs.coords_;
}

int max_analyzable_degree(const AlgebraHandle& a) {
    if (!a) throw DomainError("null algebra handle");
    return a->degree_bound() - 1;
}

CohomologyBasis cohomology_basis(const AlgebraHandle& a, int degree) {
    auto data = degree_data(a, degree);
    CohomologyBasis basis;
    basis.degree = degree;
    basis.representatives.reserve(data->rep_coords.size());
    for (const Vec& coords : data->rep_coords)
        basis.representatives.emplace_back(a, degree, coords);
    return basis;
}

std::size_t betti_number(const AlgebraHandle& a, int degree) {
    return degree_data(a, degree)->rep_coords.size();
}

std::vector<std::size_t> betti_vector(const AlgebraHandle& a, int top_degree) {
    if (top_degree < 0 || top_degree > max_analyzable_degree(a))
        throw DomainError("betti_vector: top degree out of analyzable range");
    std::vector<std::size_t> betti;
    betti.reserve(static_cast<std::size_t>(top_degree) + 1);
    for (int k = 0; k <= top_degree; ++k) betti.push_back(betti_number(a, k));
    return betti;
}

std::optional<CohomologyClass> class_of(const Cochain& cocycle) {
    const AlgebraHandle& a = cocycle.algebra();
    const int k = cocycle.degree();
    auto data = degree_data(a, k);
    if (!differentiate(cocycle).is_zero()) return std::nullopt;
    auto sol = data->quotient->particular(cocycle.coords());
    if (!sol) throw DomainError("class_of: cocycle escapes the analyzed cocycle space");
    const std::size_t h = data->rep_coords.size();
    Vec coords(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(h));
    return CohomologyClass(a, k, std::move(coords));
}

CohomologyClass basis_class(const AlgebraHandle& a, int degree, std::size_t index) {
    const std::size_t h = betti_number(a, degree);
    if (index >= h) throw DomainError("basis_class: index out of range");
    Vec coords(h, Rational(0));
    coords[index] = 1;
    return CohomologyClass(a, degree, std::move(coords));
}

CohomologyClass zero_class(const AlgebraHandle& a, int degree) {
    return CohomologyClass(a, degree, Vec(betti_number(a, degree), Rational(0)));
}

bool is_coboundary(const Cochain& cocycle) {
    auto data = degree_data(cocycle.algebra(), cocycle.degree());
    return data->coboundaries.member(cocycle.coords());
}

std::optional<Cochain> find_primitive(const Cochain& target) {
    const int q = target.degree();
    if (q == 0) return std::nullopt;
    if (q <= max_analyzable_degree(target.algebra()) && !differentiate(target).is_zero())
        throw DomainError("find_primitive: target " + target.to_string() + " is not closed");
    auto data = degree_data(target.algebra(), q - 1);
    auto sol = data->primitive->particular(target.coords());
    if (!sol) return std::nullopt;
    return Cochain(target.algebra(), q - 1, std::move(*sol));
}

CohomologyClass cup(const CohomologyClass& u, const CohomologyClass& v) {
    require_same(u, v);
    const int k = u.degree() + v.degree();
    if (k > max_analyzable_degree(u.algebra()))
        throw DomainError("cup: product degree " + std::to_string(k) + " is not analyzable");
    auto cls = class_of(multiply(u.representative(), v.representative()));
    if (!cls) throw DomainError("cup: product of cocycles failed to be closed");
    return *cls;
}

} // namespace masseylab
