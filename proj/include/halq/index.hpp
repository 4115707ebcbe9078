#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "halq/corpus.hpp"
#include "halq/hal.hpp"

namespace halq {

struct RawDocument {
    std::string id;
    std::string text;
};

// A built corpus: the shared vocabulary plus one HAL matrix per document,
// in manifest order.
struct CorpusIndex {
    std::uint32_t window = 0;
    Vocabulary vocab;
    std::vector<HalMatrix> documents;
};

// Reads a JSON manifest: an array of {"id": ..., "path": ...} objects.
// Paths are resolved relative to the manifest's directory. Throws DataError
// naming the offending path when the manifest or a document is unreadable.
std::vector<RawDocument> load_manifest(const std::filesystem::path& manifest_path);

// Normalizes, tokenizes and folds every document, builds the shared
// vocabulary, then one HAL matrix per document. Per-document phases fan out
// across threads when `parallel` is set; the vocabulary merge stays single
// threaded. The result is identical either way. A document that normalizes
// to zero tokens is a DataError naming its id.
CorpusIndex build_index(const std::vector<RawDocument>& docs, std::uint32_t window,
                        bool parallel = true);

// Index persistence: vocabulary table plus per-document sparse triplets as
// JSON. Weights round-trip exactly; the bytes are deterministic for a given
// corpus and window.
void save_index(const CorpusIndex& index, std::ostream& out);
void save_index(const CorpusIndex& index, const std::filesystem::path& path);
CorpusIndex load_index(const std::filesystem::path& path);

}  // namespace halq
