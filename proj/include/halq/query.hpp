#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halq/hal.hpp"
#include "halq/index.hpp"

namespace halq {

// Relevance of term i in the sense of term j: scalar product of the two
// unit context vectors. 0 when either term is absent from the document.
double score_and(const HalMatrix& matrix, TermId i, TermId j);

// Relevance of term i excluding the sense of term j: squared norm of the
// residual after projecting i's context vector off j's. 0 when i is absent;
// 1 when i is present and j is absent.
double score_without(const HalMatrix& matrix, TermId i, TermId j);

// Correlation-weighted exclusion: after the plain projection, every term w
// whose correlation rho_w = <u_j|u_w> reaches tau is reduced as well, by
// <u_i|u_j> * rho_w of its share of the residual, strongest correlations
// first. Clamped to [0, 1].
double score_without_refined(const HalMatrix& matrix, TermId i, TermId j, double tau);

enum class QueryOp { And, Without };

// Parses ET / SANS (aliases AND / WITHOUT), case-insensitively.
std::optional<QueryOp> parse_query_op(std::string text);
std::string to_string(QueryOp op);

struct Query {
    QueryOp op = QueryOp::And;
    std::string term_a;  // normalized surface form; folded against the vocabulary
    std::string term_b;
    bool refined = false;
    double tau = 0.5;
};

struct QueryScore {
    std::string doc_id;
    double score = 0.0;
};

struct Ranking {
    Query query;
    std::vector<QueryScore> entries;        // descending score, ties by ascending doc id
    std::vector<std::string> warnings;      // e.g. query terms missing from the vocabulary
};

// Scores every document of the index and sorts. A query term absent from
// the corpus vocabulary scores with the zero-vector conventions and leaves
// a warning in the ranking.
Ranking rank_documents(const CorpusIndex& index, const Query& query);

}  // namespace halq
