#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "halq/common.hpp"

namespace halq {

// Lowercases and strips punctuation, keeping diacritics (the corpora are
// French). Every character that is not a letter or a digit acts as a
// separator: apostrophes and hyphens split tokens, paragraph breaks become
// spaces, runs of separators collapse to one space. Case mapping covers
// ASCII, Latin-1 and Latin Extended-A; other scripts pass through unchanged.
// Throws DataError on malformed UTF-8.
std::string normalize_text(std::string_view raw);

// Splits normalized text on spaces. Order preserved, no empty tokens.
std::vector<std::string> tokenize(std::string_view normalized);

// Number of Unicode codepoints in a UTF-8 string.
std::size_t codepoint_length(std::string_view s);

class Vocabulary;

// Canonical form of a surface token: the final "s" or "x" is dropped when
// the stem has at least 3 codepoints and is itself a canonical term of the
// vocabulary, otherwise the token is returned unchanged.
std::string fold_morphology(const std::string& token, const Vocabulary& vocab);

// The term-id space shared by every document of a corpus. Immutable once
// built; safe to share across threads.
class Vocabulary {
public:
    Vocabulary() = default;

    std::size_t size() const { return terms_.size(); }
    const std::vector<std::string>& terms() const { return terms_; }
    const std::string& term(TermId id) const;
    std::optional<TermId> find(std::string_view canonical) const;

    // Folds a surface token (fold table first, then the morphology rule).
    std::string canonical(const std::string& surface) const;
    // Term id of the folded form, if the corpus contains it.
    std::optional<TermId> resolve(const std::string& surface) const;

    // Every surface form seen at build time, including identity mappings.
    const std::map<std::string, std::string>& fold_table() const { return fold_table_; }

    // Rebuilds a vocabulary from its serialized parts. `folds` holds only
    // the non-identity surface -> canonical pairs.
    static Vocabulary from_parts(std::vector<std::string> terms,
                                 const std::map<std::string, std::string>& folds);

private:
    TermId add_term(std::string canonical);

    std::vector<std::string> terms_;                    // id -> canonical term
    std::unordered_map<std::string, TermId> ids_;       // canonical term -> id
    std::map<std::string, std::string> fold_table_;     // surface -> canonical

    friend Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>&);
};

// Two passes over the surface token streams: collect the distinct surface
// forms, then fold plurals onto attested singulars. Singulars are decided
// before any plural folds onto them, so the result does not depend on
// whether the plural appears first in the corpus. Term ids follow the first
// appearance of each canonical form. Throws std::invalid_argument when the
// corpus has no tokens.
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& token_streams);

struct Document {
    std::string id;
    std::vector<TermId> tokens;  // order preserved
};

// Folds each surface token and maps it to its term id. All tokens must
// resolve (always true for the streams the vocabulary was built from).
std::vector<TermId> map_tokens(const std::vector<std::string>& surface_tokens,
                               const Vocabulary& vocab);

}  // namespace halq
