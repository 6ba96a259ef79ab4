#pragma once

#include "masseylab/cohomology.hpp"
#include "masseylab/models.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace masseylab {

enum class MasseyStatus { defined, undefined };

// Which cup-product obstruction blocked the triple product.
enum class MasseyObstruction { first_pair, second_pair };

// Optional closed perturbations added to the solved primitives; the result
// class moves only inside the indeterminacy coset, so `trivial` is invariant.
struct MasseyOptions {
    std::optional<Cochain> x_offset; // degree p1 + p2 - 1, closed
    std::optional<Cochain> y_offset; // degree p2 + p3 - 1, closed
};

struct MasseyResult {
    MasseyStatus status = MasseyStatus::undefined;
    std::optional<MasseyObstruction> obstruction;  // engaged when undefined
    std::optional<CohomologyClass> representative; // engaged when defined
    Subspace indeterminacy; // [c1] H^{p2+p3-1} + [c3] H^{p1+p2-1}, in H coords
    bool trivial = false;
    std::optional<Cochain> witness_x; // d(x) = rep1 * rep2
    std::optional<Cochain> witness_y; // d(y) = rep2 * rep3
};

// <c1, c2, c3> = [rep1 * y + (-1)^{p1+1} x * rep3], defined when both cup
// products vanish as classes; trivial when the representative class lies in
// the indeterminacy subspace.
MasseyResult massey_triple(const CohomologyClass& c1, const CohomologyClass& c2,
                           const CohomologyClass& c3, const MasseyOptions& options = {});

struct ScanEntry {
    std::array<int, 3> degrees;
    std::array<std::size_t, 3> indices; // basis-class indices per degree
    MasseyResult result;
};

struct ScanReport {
    std::string algebra_label;
    int top_degree = 0;
    std::vector<ScanEntry> entries; // sorted by degree triple, then index triple
    std::size_t examined = 0;
    std::size_t defined = 0;
    std::size_t undefined = 0;
    std::size_t trivial = 0;
    std::size_t nontrivial = 0;
    std::optional<std::size_t> first_nontrivial; // index into entries
};

// All ordered triples of cohomology basis classes with positive degrees and
// p1 + p2 + p3 - 1 <= top_degree. Entries are canonical regardless of the
// number of worker threads.
ScanReport massey_scan(const AlgebraHandle& a, int top_degree, unsigned threads = 1);

// "<a1, a1, a2>": the scanned triple named through its basis-class
// representatives.
std::string triple_name(const AlgebraHandle& a, const ScanEntry& entry);

struct IdealScanSpec {
    AlgebraHandle algebra;                      // free backend only
    std::vector<std::string> ideal_generators;  // subset N of the generators
    int min_degree = 0;
    int max_degree = 0;
};

struct IdealScanDegree {
    int degree = 0;
    // Closed elements of the ideal whose classes are linearly independent
    // (empty when every closed ideal element in this degree is exact).
    std::vector<Cochain> closed_non_exact;
};

std::vector<IdealScanDegree> ideal_closed_scan(const IdealScanSpec& spec);

struct VerdictReport {
    std::string model;
    bool formal = false;
    std::string verdict_line;
    std::vector<std::string> notes; // what was computed, what is cited
    ScanReport scan;
    std::optional<ScanEntry> witness; // first nontrivial triple when non-formal
};

// Massey-based formality verdicts for the three-sasakian and sasaki-circle
// models; other model kinds have no verdict and are rejected.
VerdictReport verdict_report(const ModelSpec& spec);

} // namespace masseylab
