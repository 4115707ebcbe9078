#include "halq/hal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace halq {

namespace {

inline std::uint64_t cell_key(TermId i, TermId j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | j;
}

using CellMap = std::unordered_map<std::uint64_t, double>;

void check_build_args(std::span<const TermId> tokens, TermId dim, std::uint32_t window) {
    if (window < 1) throw std::invalid_argument("hal: window must be >= 1");
    if (tokens.empty()) throw std::invalid_argument("hal: empty token stream");
    for (TermId t : tokens)
        if (t >= dim)
            throw std::invalid_argument("hal: token id " + std::to_string(t) +
                                        " outside vocabulary of size " + std::to_string(dim));
}

// Contributions of window position p: the self cell at distance 0 and all
// pairs (p, q) with q - p <= window. A pair of equal terms feeds the
// diagonal twice, once per orientation.
inline void accumulate_position(std::span<const TermId> tokens, std::size_t p,
                                std::uint32_t window, CellMap& acc) {
    const TermId a = tokens[p];
    acc[cell_key(a, a)] += window + 1.0;
    const std::size_t qmax = std::min(tokens.size() - 1, p + window);
    for (std::size_t q = p + 1; q <= qmax; ++q) {
        const TermId b = tokens[q];
        const double w = window + 1.0 - static_cast<double>(q - p);
        acc[cell_key(a, b)] += (a == b) ? 2.0 * w : w;
    }
}

}  // namespace

HalMatrix::HalMatrix(std::string doc_id, TermId dim, std::uint32_t window,
                     std::unordered_map<std::uint64_t, double>&& cells)
    : HalMatrix(std::move(doc_id), dim, window, [&] {
          std::vector<Triplet> t;
          t.reserve(cells.size());
          for (const auto& [key, w] : cells)
              t.push_back({static_cast<TermId>(key >> 32), static_cast<TermId>(key & 0xFFFFFFFFu), w});
          return t;
      }()) {}

HalMatrix::HalMatrix(std::string doc_id, TermId dim, std::uint32_t window,
                     std::vector<Triplet> canonical_cells)
    : doc_id_(std::move(doc_id)), dim_(dim), window_(window), canonical_(std::move(canonical_cells)) {
    for (const auto& t : canonical_) {
        if (t.i > t.j || t.j >= dim_)
            throw std::invalid_argument("hal: cell (" + std::to_string(t.i) + "," +
                                        std::to_string(t.j) + ") is not canonical for dim " +
                                        std::to_string(dim_));
        if (t.weight < 0.0) throw std::invalid_argument("hal: negative cell weight");
    }
    std::sort(canonical_.begin(), canonical_.end(), [](const Triplet& a, const Triplet& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });

    // Both orientations, grouped by column. Filling from (i, j)-sorted
    // cells leaves every column sorted by neighbor id.
    col_start_.assign(static_cast<std::size_t>(dim_) + 1, 0);
    for (const auto& t : canonical_) {
        ++col_start_[t.i + 1];
        if (t.i != t.j) ++col_start_[t.j + 1];
    }
    for (std::size_t c = 1; c < col_start_.size(); ++c) col_start_[c] += col_start_[c - 1];
    adjacency_.resize(col_start_.back());
    std::vector<std::uint32_t> cursor(col_start_.begin(), col_start_.end() - 1);
    for (const auto& t : canonical_) {
        adjacency_[cursor[t.i]++] = {t.j, t.weight};
        if (t.i != t.j) adjacency_[cursor[t.j]++] = {t.i, t.weight};
    }
    for (std::size_t c = 0; c < dim_; ++c) {
        auto begin = adjacency_.begin() + col_start_[c];
        auto end = adjacency_.begin() + col_start_[c + 1];
        std::sort(begin, end, [](const Neighbor& a, const Neighbor& b) { return a.term < b.term; });
    }
}

double HalMatrix::weight(TermId i, TermId j) const {
    if (i >= dim_ || j >= dim_)
        throw std::invalid_argument("hal: term id out of range");
    const auto col = column(i);
    auto it = std::lower_bound(col.begin(), col.end(), j,
                               [](const Neighbor& n, TermId t) { return n.term < t; });
    return (it != col.end() && it->term == j) ? it->weight : 0.0;
}

std::span<const HalMatrix::Neighbor> HalMatrix::column(TermId term) const {
    if (term >= dim_)
        throw std::invalid_argument("hal: term id " + std::to_string(term) + " out of range");
    return {adjacency_.data() + col_start_[term],
            adjacency_.data() + col_start_[term + 1]};
}

HalMatrix build_hal_matrix(const std::string& doc_id, std::span<const TermId> tokens,
                           TermId dim, std::uint32_t window) {
    check_build_args(tokens, dim, window);
    CellMap acc;
    for (std::size_t p = 0; p < tokens.size(); ++p)
        accumulate_position(tokens, p, window, acc);
    return HalMatrix(doc_id, dim, window, std::move(acc));
}

HalMatrix build_hal_matrix_omp(const std::string& doc_id, std::span<const TermId> tokens,
                               TermId dim, std::uint32_t window) {
    check_build_args(tokens, dim, window);
#ifdef _OPENMP
    CellMap merged;
    const auto n = static_cast<std::int64_t>(tokens.size());
#pragma omp parallel
    {
        CellMap local;
#pragma omp for schedule(static) nowait
        for (std::int64_t p = 0; p < n; ++p)
            accumulate_position(tokens, static_cast<std::size_t>(p), window, local);
#pragma omp critical(halq_hal_merge)
        for (const auto& [key, w] : local) merged[key] += w;
    }
    return HalMatrix(doc_id, dim, window, std::move(merged));
#else
    return build_hal_matrix(doc_id, tokens, dim, window);
#endif
}

double SemanticVector::dot(const SemanticVector& other) const {
    double s = 0.0;
    for (std::size_t k = 0; k < components.size(); ++k) s += components[k] * other.components[k];
    return s;
}

SemanticVector context_vector(const HalMatrix& matrix, TermId term) {
    const auto col = matrix.column(term);  // range-checks term
    SemanticVector v;
    v.term = term;
    v.components.assign(matrix.dim(), 0.0);
    if (col.empty()) return v;  // absent term: completed with zeros

    double norm_sq = 0.0;
    for (const auto& n : col) norm_sq += n.weight * n.weight;
    const double norm = std::sqrt(norm_sq);
    for (const auto& n : col) v.components[n.term] = n.weight / norm;
    v.zero = false;
    return v;
}

}  // namespace halq
