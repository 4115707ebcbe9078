#include "halq/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace halq {

namespace {

// --- minimal UTF-8 machinery -------------------------------------------

[[noreturn]] void bad_utf8(std::size_t offset) {
    throw DataError("invalid UTF-8 byte sequence at offset " + std::to_string(offset));
}

std::uint32_t decode_codepoint(std::string_view s, std::size_t& pos) {
    const auto byte = [&](std::size_t k) { return static_cast<std::uint32_t>(static_cast<unsigned char>(s[k])); };
    const auto cont = [&](std::size_t k) { return k < s.size() && (byte(k) & 0xC0u) == 0x80u; };

    const std::uint32_t b0 = byte(pos);
    if (b0 < 0x80u) {
        pos += 1;
        return b0;
    }
    if ((b0 & 0xE0u) == 0xC0u) {
        if (!cont(pos + 1)) bad_utf8(pos);
        const std::uint32_t cp = ((b0 & 0x1Fu) << 6) | (byte(pos + 1) & 0x3Fu);
        if (cp < 0x80u) bad_utf8(pos);  // overlong
        pos += 2;
        return cp;
    }
    if ((b0 & 0xF0u) == 0xE0u) {
        if (!cont(pos + 1) || !cont(pos + 2)) bad_utf8(pos);
        const std::uint32_t cp = ((b0 & 0x0Fu) << 12) | ((byte(pos + 1) & 0x3Fu) << 6) | (byte(pos + 2) & 0x3Fu);
        if (cp < 0x800u || (cp >= 0xD800u && cp <= 0xDFFFu)) bad_utf8(pos);
        pos += 3;
        return cp;
    }
    if ((b0 & 0xF8u) == 0xF0u) {
        if (!cont(pos + 1) || !cont(pos + 2) || !cont(pos + 3)) bad_utf8(pos);
        const std::uint32_t cp = ((b0 & 0x07u) << 18) | ((byte(pos + 1) & 0x3Fu) << 12) |
                                 ((byte(pos + 2) & 0x3Fu) << 6) | (byte(pos + 3) & 0x3Fu);
        if (cp < 0x10000u || cp > 0x10FFFFu) bad_utf8(pos);
        pos += 4;
        return cp;
    }
    bad_utf8(pos);
}

void encode_codepoint(std::string& out, std::uint32_t cp) {
    if (cp < 0x80u) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800u) {
        out.push_back(static_cast<char>(0xC0u | (cp >> 6)));
        out.push_back(static_cast<char>(0x80u | (cp & 0x3Fu)));
    } else if (cp < 0x10000u) {
        out.push_back(static_cast<char>(0xE0u | (cp >> 12)));
        out.push_back(static_cast<char>(0x80u | ((cp >> 6) & 0x3Fu)));
        out.push_back(static_cast<char>(0x80u | (cp & 0x3Fu)));
    } else {
        out.push_back(static_cast<char>(0xF0u | (cp >> 18)));
        out.push_back(static_cast<char>(0x80u | ((cp >> 12) & 0x3Fu)));
        out.push_back(static_cast<char>(0x80u | ((cp >> 6) & 0x3Fu)));
        out.push_back(static_cast<char>(0x80u | (cp & 0x3Fu)));
    }
}

// Letters and digits are word characters; everything else separates tokens.
// Scripts beyond Latin Extended-A are kept as-is except the typographic
// punctuation blocks (curly quotes, dashes, ellipses, CJK punctuation).
bool is_word_codepoint(std::uint32_t cp) {
    if (cp < 0x80u)
        return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
    if (cp < 0xC0u) return false;
    if (cp < 0x100u) return cp != 0xD7u && cp != 0xF7u;
    if (cp < 0x180u) return true;
    if (cp >= 0x2000u && cp <= 0x206Fu) return false;
    if (cp >= 0x2E00u && cp <= 0x2E7Fu) return false;
    if (cp >= 0x3000u && cp <= 0x303Fu) return false;
    return true;
}

std::uint32_t lower_codepoint(std::uint32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20u;
    if (cp >= 0xC0u && cp <= 0xDEu && cp != 0xD7u) return cp + 0x20u;  // À..Þ
    if (cp == 0x130u) return 'i';                                      // İ
    if (cp >= 0x100u && cp <= 0x137u) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp >= 0x139u && cp <= 0x148u) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x14Au && cp <= 0x177u) return (cp % 2 == 0) ? cp + 1 : cp;  // covers Œ -> œ
    if (cp == 0x178u) return 0xFFu;                                        // Ÿ -> ÿ
    if (cp >= 0x179u && cp <= 0x17Eu) return (cp % 2 == 1) ? cp + 1 : cp;
    return cp;
}

bool has_plural_suffix(const std::string& token) {
    return token.size() >= 2 && (token.back() == 's' || token.back() == 'x');
}

}  // namespace

std::string normalize_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    std::size_t pos = 0;
    while (pos < raw.size()) {
        const std::uint32_t cp = decode_codepoint(raw, pos);
        if (is_word_codepoint(cp)) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            encode_codepoint(out, lower_codepoint(cp));
        } else {
            pending_space = true;
        }
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view normalized) {
    std::vector<std::string> tokens;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= normalized.size(); ++i) {
        if (i == normalized.size() || normalized[i] == ' ') {
            if (i > start) tokens.emplace_back(normalized.substr(start, i - start));
            start = i + 1;
        }
    }
    return tokens;
}

std::size_t codepoint_length(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0u) != 0x80u) ++n;
    return n;
}

const std::string& Vocabulary::term(TermId id) const {
    if (id >= terms_.size())
        throw std::invalid_argument("term id " + std::to_string(id) + " out of range");
    return terms_[id];
}

std::optional<TermId> Vocabulary::find(std::string_view canonical) const {
    auto it = ids_.find(std::string(canonical));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

std::string Vocabulary::canonical(const std::string& surface) const {
    auto it = fold_table_.find(surface);
    if (it != fold_table_.end()) return it->second;
    if (has_plural_suffix(surface)) {
        std::string stem = surface.substr(0, surface.size() - 1);
        if (codepoint_length(stem) >= 3 && ids_.count(stem)) return stem;
    }
    return surface;
}

std::optional<TermId> Vocabulary::resolve(const std::string& surface) const {
    return find(canonical(surface));
}

TermId Vocabulary::add_term(std::string canonical) {
    const TermId id = static_cast<TermId>(terms_.size());
    ids_.emplace(canonical, id);
    terms_.push_back(std::move(canonical));
    return id;
}

Vocabulary Vocabulary::from_parts(std::vector<std::string> terms,
                                  const std::map<std::string, std::string>& folds) {
    Vocabulary v;
    for (auto& t : terms) {
        if (v.ids_.count(t)) throw DataError("duplicate vocabulary term '" + t + "'");
        v.fold_table_.emplace(t, t);
        v.add_term(std::move(t));
    }
    for (const auto& [surface, target] : folds) {
        if (!v.ids_.count(target))
            throw DataError("fold target '" + target + "' is not a vocabulary term");
        v.fold_table_[surface] = target;
    }
    return v;
}

std::string fold_morphology(const std::string& token, const Vocabulary& vocab) {
    if (token.empty()) throw std::invalid_argument("fold_morphology: empty token");
    return vocab.canonical(token);
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& token_streams) {
    if (token_streams.empty())
        throw std::invalid_argument("build_vocabulary: empty corpus");

    // Pass 1: distinct surface forms in first-appearance order.
    std::vector<std::string> surfaces;
    std::unordered_set<std::string> seen;
    for (const auto& stream : token_streams) {
        for (const auto& tok : stream) {
            if (tok.empty())
                throw std::invalid_argument("build_vocabulary: empty token in stream");
            if (seen.insert(tok).second) surfaces.push_back(tok);
        }
    }
    if (surfaces.empty())
        throw std::invalid_argument("build_vocabulary: corpus has no tokens");

    // Pass 2: decide canonical forms shortest-first. A stem is strictly
    // shorter than its plural, so its status is settled before the plural
    // is examined, whatever order the corpus presented them in.
    std::vector<std::size_t> order(surfaces.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return codepoint_length(surfaces[a]) < codepoint_length(surfaces[b]);
    });

    Vocabulary vocab;
    std::unordered_set<std::string> canonical_set;
    for (std::size_t k : order) {
        const std::string& s = surfaces[k];
        std::string target = s;
        if (has_plural_suffix(s)) {
            std::string stem = s.substr(0, s.size() - 1);
            if (codepoint_length(stem) >= 3 && canonical_set.count(stem)) target = std::move(stem);
        }
        if (target == s) canonical_set.insert(s);
        vocab.fold_table_.emplace(s, std::move(target));
    }

    // Term ids in first-appearance order of the canonical form.
    for (const auto& stream : token_streams) {
        for (const auto& tok : stream) {
            const std::string& c = vocab.fold_table_.at(tok);
            if (!vocab.ids_.count(c)) vocab.add_term(c);
        }
    }
    return vocab;
}

std::vector<TermId> map_tokens(const std::vector<std::string>& surface_tokens,
                               const Vocabulary& vocab) {
    std::vector<TermId> ids;
    ids.reserve(surface_tokens.size());
    for (const auto& tok : surface_tokens) {
        auto id = vocab.resolve(tok);
        if (!id) throw std::invalid_argument("token '" + tok + "' does not resolve in vocabulary");
        ids.push_back(*id);
    }
    return ids;
}

}  // namespace halq
