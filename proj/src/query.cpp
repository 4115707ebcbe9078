#include "halq/query.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace halq {

namespace {

double column_norm(std::span<const HalMatrix::Neighbor> col) {
    double s = 0.0;
    for (const auto& n : col) s += n.weight * n.weight;
    return std::sqrt(s);
}

// Dot product of two sorted sparse columns.
double column_dot(std::span<const HalMatrix::Neighbor> a, std::span<const HalMatrix::Neighbor> b) {
    double s = 0.0;
    std::size_t ka = 0, kb = 0;
    while (ka < a.size() && kb < b.size()) {
        if (a[ka].term < b[kb].term) ++ka;
        else if (b[kb].term < a[ka].term) ++kb;
        else s += a[ka++].weight * b[kb++].weight;
    }
    return s;
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

double score_and(const HalMatrix& matrix, TermId i, TermId j) {
    const auto ci = matrix.column(i);
    const auto cj = matrix.column(j);
    if (ci.empty() || cj.empty()) return 0.0;
    return clamp01(column_dot(ci, cj) / (column_norm(ci) * column_norm(cj)));
}

double score_without(const HalMatrix& matrix, TermId i, TermId j) {
    const auto ui = context_vector(matrix, i);
    if (ui.zero) return 0.0;
    const auto uj = context_vector(matrix, j);
    if (uj.zero) return 1.0;

    const double s = ui.dot(uj);
    double norm_sq = 0.0;
    for (std::size_t k = 0; k < ui.components.size(); ++k) {
        const double x = ui.components[k] - s * uj.components[k];
        norm_sq += x * x;
    }
    return clamp01(norm_sq);
}

double score_without_refined(const HalMatrix& matrix, TermId i, TermId j, double tau) {
    if (tau < 0.0 || tau > 1.0)
        throw std::invalid_argument("score_without_refined: tau must lie in [0, 1]");
    const auto ui = context_vector(matrix, i);
    if (ui.zero) return 0.0;
    const auto uj = context_vector(matrix, j);

    const double s_ij = uj.zero ? 0.0 : ui.dot(uj);
    std::vector<double> residual(ui.components);
    if (!uj.zero)
        for (std::size_t k = 0; k < residual.size(); ++k) residual[k] -= s_ij * uj.components[k];
    if (s_ij == 0.0) {
        double norm_sq = 0.0;
        for (double x : residual) norm_sq += x * x;
        return clamp01(norm_sq);
    }

    // Terms correlated with the excluded concept, strongest first; ties by
    // ascending id keep the reduction order deterministic.
    struct Related {
        double rho;
        TermId term;
    };
    std::vector<Related> related;
    for (TermId w = 0; w < matrix.dim(); ++w) {
        if (w == i || w == j) continue;
        const auto cw = matrix.column(w);
        if (cw.empty()) continue;
        double rho = 0.0;
        const double nw = column_norm(cw);
        for (const auto& n : cw) rho += uj.components[n.term] * n.weight;
        rho /= nw;
        if (rho >= tau && rho > 0.0) related.push_back({rho, w});
    }
    std::sort(related.begin(), related.end(), [](const Related& a, const Related& b) {
        return a.rho != b.rho ? a.rho > b.rho : a.term < b.term;
    });

    for (const auto& r : related) {
        const auto cw = matrix.column(r.term);
        const double nw = column_norm(cw);
        double along = 0.0;
        for (const auto& n : cw) along += residual[n.term] * n.weight;
        along /= nw;
        const double factor = s_ij * r.rho * along;
        for (const auto& n : cw) residual[n.term] -= factor * n.weight / nw;
    }

    double norm_sq = 0.0;
    for (double x : residual) norm_sq += x * x;
    return clamp01(norm_sq);
}

std::optional<QueryOp> parse_query_op(std::string text) {
    std::transform(text.begin(), text.end(), text.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (text == "ET" || text == "AND") return QueryOp::And;
    if (text == "SANS" || text == "WITHOUT") return QueryOp::Without;
    return std::nullopt;
}

std::string to_string(QueryOp op) { return op == QueryOp::And ? "ET" : "SANS"; }

Ranking rank_documents(const CorpusIndex& index, const Query& query) {
    if (index.documents.empty()) throw std::invalid_argument("rank_documents: empty index");

    Ranking ranking;
    ranking.query = query;

    const auto resolve = [&](const std::string& term) -> std::optional<TermId> {
        auto id = index.vocab.resolve(term);
        if (!id)
            ranking.warnings.push_back("term '" + term +
                                       "' is not in the corpus vocabulary; scored as zero vector");
        return id;
    };
    const auto ia = resolve(query.term_a);
    const auto ib = resolve(query.term_b);

    const auto n = static_cast<std::int64_t>(index.documents.size());
    ranking.entries.resize(index.documents.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < n; ++k) {
        const HalMatrix& m = index.documents[k];
        double score = 0.0;
        if (query.op == QueryOp::And) {
            score = (ia && ib) ? score_and(m, *ia, *ib) : 0.0;
        } else if (!ia) {
            score = 0.0;
        } else if (!ib) {
            score = m.present(*ia) ? 1.0 : 0.0;
        } else {
            score = query.refined ? score_without_refined(m, *ia, *ib, query.tau)
                                  : score_without(m, *ia, *ib);
        }
        ranking.entries[k] = {m.doc_id(), score};
    }

    std::sort(ranking.entries.begin(), ranking.entries.end(),
              [](const QueryScore& a, const QueryScore& b) {
                  return a.score != b.score ? a.score > b.score : a.doc_id < b.doc_id;
              });
    return ranking;
}

}  // namespace halq
