#include "masseylab/models.hpp"

#include "masseylab/cohomology.hpp"

#include <utility>

namespace masseylab {

namespace {

constexpr int kStoredBound = 8;

std::vector<Rational> checked_lambdas(const QKOrbifoldSpec& spec) {
    if (spec.k < 1) throw DomainError("qk orbifold: k must be >= 1");
    std::vector<Rational> lambdas = spec.lambdas;
    if (lambdas.empty()) lambdas.assign(static_cast<std::size_t>(spec.k), Rational(1));
    if (lambdas.size() != static_cast<std::size_t>(spec.k))
        throw DomainError("qk orbifold: expected " + std::to_string(spec.k) + " lambdas, got " +
                          std::to_string(lambdas.size()));
    for (const Rational& l : lambdas)
        if (l == 0) throw DomainError("qk orbifold: lambda values must be nonzero");
    return lambdas;
}

std::string lambda_suffix(const std::vector<Rational>& lambdas) {
    std::string out = "[";
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (i) out += ",";
        out += rational_to_string(lambdas[i]);
    }
    return out + "]";
}

std::string sign_suffix(RelationSign sign) {
    return sign == RelationSign::minus ? "" : ",sign=+";
}

} // namespace

AlgebraHandle qk_orbifold_algebra(const QKOrbifoldSpec& spec) {
    const std::vector<Rational> lambdas = checked_lambdas(spec);
    const std::size_t k = static_cast<std::size_t>(spec.k);

    ScAlgebraSpec sc;
    sc.degree_bound = kStoredBound;
    sc.basis_by_degree.assign(kStoredBound + 1, {});
    sc.basis_by_degree[0] = {"1"};
    for (std::size_t i = 1; i <= k; ++i) sc.basis_by_degree[2].push_back("a" + std::to_string(i));
    sc.basis_by_degree[4] = {"Omega"};
    sc.unit = "1";
    for (std::size_t i = 1; i <= k; ++i) {
        const std::string ai = "a" + std::to_string(i);
        for (std::size_t j = 1; j <= k; ++j) {
            const std::string aj = "a" + std::to_string(j);
            sc.products.push_back(
                {ai, aj,
                 i == j ? std::vector<std::pair<std::string, Rational>>{{"Omega", lambdas[i - 1]}}
                        : std::vector<std::pair<std::string, Rational>>{}});
        }
        sc.products.push_back({ai, "Omega", {}});
        sc.products.push_back({"Omega", ai, {}});
    }
    sc.products.push_back({"Omega", "Omega", {}});
    sc.label = "qk-orbifold(k=" + std::to_string(spec.k) + ",lambda=" + lambda_suffix(lambdas) + ")";
    return build_sc_algebra(sc);
}

AlgebraHandle three_sasakian_model(const QKOrbifoldSpec& spec) {
    AlgebraHandle base = qk_orbifold_algebra(spec);
    auto omega = base->find_basis_element("Omega");
    Cochain euler = basis_cochain(base, omega->first, omega->second);
    std::string label = "three-sasakian(k=" + std::to_string(spec.k) +
                        ",lambda=" + lambda_suffix(checked_lambdas(spec)) + ")";
    return hirsch_extend(base, {"z", 3, euler, label});
}

AlgebraHandle cp3_blowup_algebra(const BlowupSpec& spec) {
    if (spec.k < 1) throw DomainError("cp3 blowup: k must be >= 1");
    const std::size_t k = static_cast<std::size_t>(spec.k);
    const Rational cube_sign = spec.relation_sign == RelationSign::minus ? -1 : 1;

    std::vector<std::string> deg2 = {"b"};
    std::vector<std::string> deg4 = {"b^2"};
    for (std::size_t i = 1; i <= k; ++i) {
        deg2.push_back("a" + std::to_string(i));
        deg4.push_back("a" + std::to_string(i) + "^2");
    }

    ScAlgebraSpec sc;
    sc.degree_bound = kStoredBound;
    sc.basis_by_degree.assign(kStoredBound + 1, {});
    sc.basis_by_degree[0] = {"1"};
    sc.basis_by_degree[2] = deg2;
    sc.basis_by_degree[4] = deg4;
    sc.basis_by_degree[6] = {"b^3"};
    sc.unit = "1";

    // degree 2 x 2: squares only
    for (std::size_t i = 0; i < deg2.size(); ++i)
        for (std::size_t j = 0; j < deg2.size(); ++j)
            sc.products.push_back(
                {deg2[i], deg2[j],
                 i == j ? std::vector<std::pair<std::string, Rational>>{{deg4[i], 1}}
                        : std::vector<std::pair<std::string, Rational>>{}});
    // degree 2 x 4 (both orders): b*b^2 = b^3, a_i*a_i^2 = cube_sign*b^3
    for (std::size_t i = 0; i < deg2.size(); ++i)
        for (std::size_t j = 0; j < deg4.size(); ++j) {
            std::vector<std::pair<std::string, Rational>> result;
            if (i == j) result = {{"b^3", i == 0 ? Rational(1) : cube_sign}};
            sc.products.push_back({deg2[i], deg4[j], result});
            sc.products.push_back({deg4[j], deg2[i], result});
        }
    // everything landing in degree 8 vanishes (the ring stops at 6)
    for (const std::string& u : deg4)
        for (const std::string& v : deg4) sc.products.push_back({u, v, {}});
    for (const std::string& u : deg2) {
        sc.products.push_back({u, "b^3", {}});
        sc.products.push_back({"b^3", u, {}});
    }

    sc.label = "cp3-blowup(k=" + std::to_string(spec.k) + sign_suffix(spec.relation_sign) + ")";
    return build_sc_algebra(sc);
}

AlgebraHandle sasaki_circle_model(const CircleBundleSpec& spec) {
    if (spec.l <= 0) throw DomainError("sasaki circle model: l must be a positive integer");
    AlgebraHandle base = cp3_blowup_algebra({spec.k, spec.relation_sign});

    Vec coords(base->dim(2), Rational(0));
    coords[0] = spec.l; // b
    for (std::size_t i = 1; i < coords.size(); ++i) coords[i] = -1;
    Cochain euler(base, 2, std::move(coords));

    std::string label = "sasaki-circle(k=" + std::to_string(spec.k) +
                        ",l=" + std::to_string(spec.l) + sign_suffix(spec.relation_sign) + ")";
    return hirsch_extend(base, {"x", 1, euler, label});
}

AlgebraHandle build_model(const ModelSpec& spec) {
    return std::visit(
        [](const auto& s) -> AlgebraHandle {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, QKOrbifoldSpec>) return qk_orbifold_algebra(s);
            else if constexpr (std::is_same_v<T, ThreeSasakianSpec>) return three_sasakian_model(s.base);
            else if constexpr (std::is_same_v<T, BlowupSpec>) return cp3_blowup_algebra(s);
            else return sasaki_circle_model(s);
        },
        spec);
}

std::string model_label(const ModelSpec& spec) { return build_model(spec)->label(); }

PoincarePairing poincare_gram(const AlgebraHandle& a, int formal_dimension) {
    const int n = formal_dimension;
    if (n < 0 || n > max_analyzable_degree(a))
        throw DomainError("poincare_gram: formal dimension out of analyzable range");
    if (betti_number(a, n) != 1)
        throw DomainError("poincare_gram: expected a one-dimensional top degree, b_" +
                          std::to_string(n) + " = " + std::to_string(betti_number(a, n)));

    PoincarePairing pairing;
    pairing.formal_dimension = n;
    pairing.all_nondegenerate = true;
    for (int j = 0; 2 * j <= n; ++j) {
        const std::size_t rows = betti_number(a, j);
        const std::size_t cols = betti_number(a, n - j);
        PairingEntry entry;
        entry.degree = j;
        entry.gram = Matrix(rows, cols);
        for (std::size_t s = 0; s < rows; ++s)
            for (std::size_t t = 0; t < cols; ++t)
                entry.gram.at(s, t) = cup(basis_class(a, j, s), basis_class(a, n - j, t)).coords()[0];
        entry.nondegenerate = rows == cols && rank(entry.gram) == rows;
        pairing.all_nondegenerate = pairing.all_nondegenerate && entry.nondegenerate;
        pairing.entries.push_back(std::move(entry));
    }
    return pairing;
}

PairingDiagonalization diagonalize_pairing(const Matrix& gram) {
    const std::size_t n = gram.rows();
    if (gram.cols() != n) throw DomainError("diagonalize_pairing: matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (gram.at(i, j) != gram.at(j, i))
                throw DomainError("diagonalize_pairing: matrix is not symmetric");

    Matrix m = gram;
    Matrix p = Matrix::identity(n);

    // Basis column operation u_t += c * u_s, applied congruently to m.
    auto add_basis = [&](std::size_t t, std::size_t s, const Rational& c) {
        for (std::size_t j = 0; j < n; ++j) m.at(t, j) += c * m.at(s, j);
        for (std::size_t i = 0; i < n; ++i) m.at(i, t) += c * m.at(i, s);
        for (std::size_t i = 0; i < n; ++i) p.at(i, t) += c * p.at(i, s);
    };
    auto swap_basis = [&](std::size_t s, std::size_t t) {
        m.swap_rows(s, t);
        for (std::size_t i = 0; i < n; ++i) std::swap(m.at(i, s), m.at(i, t));
        for (std::size_t i = 0; i < n; ++i) std::swap(p.at(i, s), p.at(i, t));
    };

    for (std::size_t i = 0; i < n; ++i) {
        if (m.at(i, i) == 0) {
            std::size_t pivot = n;
            for (std::size_t j = i + 1; j < n && pivot == n; ++j)
                if (m.at(j, j) != 0) pivot = j;
            if (pivot != n) {
                swap_basis(i, pivot);
            } else {
                // all remaining diagonal entries vanish; create one
                std::size_t s = n, t = n;
                for (std::size_t r = i; r < n && s == n; ++r)
                    for (std::size_t c = r + 1; c < n && s == n; ++c)
                        if (m.at(r, c) != 0) { s = r; t = c; }
                if (s == n) throw DomainError("diagonalize_pairing: degenerate pairing");
                add_basis(s, t, Rational(1)); // g(u_s + u_t, u_s + u_t) = 2 g(u_s, u_t) != 0
                if (s != i) swap_basis(i, s);
            }
        }
        const Rational d = m.at(i, i);
        for (std::size_t j = i + 1; j < n; ++j)
            if (m.at(i, j) != 0) add_basis(j, i, -m.at(i, j) / d);
    }

    for (std::size_t i = 0; i < n; ++i)
        if (m.at(i, i) == 0) throw DomainError("diagonalize_pairing: degenerate pairing");
    return {std::move(p), std::move(m)};
}

std::pair<std::size_t, std::size_t> signature_of_diagonal(const Matrix& diagonal) {
    std::pair<std::size_t, std::size_t> counts{0, 0};
    for (std::size_t i = 0; i < diagonal.rows() && i < diagonal.cols(); ++i) {
        if (diagonal.at(i, i) > 0) ++counts.first;
        if (diagonal.at(i, i) < 0) ++counts.second;
    }
    return counts;
}

} // namespace masseylab
