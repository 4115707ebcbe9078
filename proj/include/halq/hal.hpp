#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "halq/common.hpp"

namespace halq {

// One symmetric co-occurrence cell, stored with i <= j.
struct Triplet {
    TermId i;
    TermId j;
    double weight;

    bool operator==(const Triplet&) const = default;
};

// Per-document symmetric term x term weight matrix. A sliding window of
// length l contributes weight l + 1 - d to every token pair at distance
// d <= l; d = 0 puts l + 1 on the diagonal once per occurrence, so the self
// weight dominates. Immutable once built; safe to share across threads.
class HalMatrix {
public:
    struct Neighbor {
        TermId term;
        double weight;
    };

    HalMatrix() = default;
    HalMatrix(std::string doc_id, TermId dim, std::uint32_t window,
              std::unordered_map<std::uint64_t, double>&& cells);
    HalMatrix(std::string doc_id, TermId dim, std::uint32_t window,
              std::vector<Triplet> canonical_cells);

    const std::string& doc_id() const { return doc_id_; }
    TermId dim() const { return dim_; }
    std::uint32_t window() const { return window_; }
    std::size_t cell_count() const { return canonical_.size(); }

    // Symmetric lookup; 0 when the pair never co-occurs.
    double weight(TermId i, TermId j) const;

    // All neighbors of `term` (both orientations), sorted by term id.
    // Empty when the term does not occur in the document.
    std::span<const Neighbor> column(TermId term) const;

    bool present(TermId term) const { return !column(term).empty(); }

    // Canonical cells (i <= j), sorted by (i, j). Deterministic for a given
    // document, whatever order the cells were accumulated in.
    const std::vector<Triplet>& triplets() const { return canonical_; }

private:
    std::string doc_id_;
    TermId dim_ = 0;
    std::uint32_t window_ = 0;
    std::vector<Triplet> canonical_;
    std::vector<std::uint32_t> col_start_;  // dim + 1 offsets into adjacency_
    std::vector<Neighbor> adjacency_;
};

// Serial reference builder. Throws std::invalid_argument when window < 1,
// tokens is empty, or a token id is outside [0, dim).
HalMatrix build_hal_matrix(const std::string& doc_id, std::span<const TermId> tokens,
                           TermId dim, std::uint32_t window);

// OpenMP builder: splits window positions across threads, accumulates into
// per-thread maps and merges. Bit-identical to build_hal_matrix (the weights
// are small integers, so summation order cannot matter). Falls back to the
// serial builder when compiled without OpenMP.
HalMatrix build_hal_matrix_omp(const std::string& doc_id, std::span<const TermId> tokens,
                               TermId dim, std::uint32_t window);

// Unit-normalized matrix column of a term; identically zero when the term
// does not occur in the document.
struct SemanticVector {
    TermId term = 0;
    std::vector<double> components;  // dense, length dim
    bool zero = true;

    double dot(const SemanticVector& other) const;
};

SemanticVector context_vector(const HalMatrix& matrix, TermId term);

}  // namespace halq
