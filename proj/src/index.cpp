#include "halq/index.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace halq {

namespace {

constexpr const char* kIndexFormat = "halq-index-v1";

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

}  // namespace

std::vector<RawDocument> load_manifest(const std::filesystem::path& manifest_path) {
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(read_file(manifest_path));
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed manifest " + manifest_path.string() + ": " + e.what());
    }
    if (!manifest.is_array())
        throw DataError("manifest " + manifest_path.string() + " must be a JSON array of {id, path}");

    const auto base = manifest_path.parent_path();
    std::vector<RawDocument> docs;
    docs.reserve(manifest.size());
    for (const auto& entry : manifest) {
        if (!entry.is_object() || !entry.contains("id") || !entry.contains("path"))
            throw DataError("manifest entry missing id/path in " + manifest_path.string());
        std::filesystem::path doc_path = entry.at("path").get<std::string>();
        if (doc_path.is_relative()) doc_path = base / doc_path;
        docs.push_back({entry.at("id").get<std::string>(), read_file(doc_path)});
    }
    return docs;
}

CorpusIndex build_index(const std::vector<RawDocument>& docs, std::uint32_t window,
                        bool parallel) {
    if (docs.empty()) throw std::invalid_argument("build_index: no documents");
    const auto n = static_cast<std::int64_t>(docs.size());

    // Per-document tokenization; failures are collected and reported with
    // the document id rather than thrown across the parallel region.
    std::vector<std::vector<std::string>> streams(docs.size());
    std::vector<std::string> failures(docs.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t k = 0; k < n; ++k) {
        try {
            streams[k] = tokenize(normalize_text(docs[k].text));
            if (streams[k].empty())
                failures[k] = "document '" + docs[k].id + "' has no tokens after normalization";
        } catch (const std::exception& e) {
            failures[k] = "document '" + docs[k].id + "': " + e.what();
        }
    }
    for (const auto& f : failures)
        if (!f.empty()) throw DataError(f);

    CorpusIndex index;
    index.window = window;
    index.vocab = build_vocabulary(streams);  // single-writer merge phase

    const auto dim = static_cast<TermId>(index.vocab.size());
    index.documents.resize(docs.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t k = 0; k < n; ++k) {
        const auto ids = map_tokens(streams[k], index.vocab);
        index.documents[k] = build_hal_matrix(docs[k].id, ids, dim, window);
    }
    return index;
}

void save_index(const CorpusIndex& index, std::ostream& out) {
    nlohmann::ordered_json j;
    j["format"] = kIndexFormat;
    j["window"] = index.window;

    nlohmann::ordered_json vocab;
    vocab["terms"] = index.vocab.terms();
    nlohmann::ordered_json folds(nlohmann::json::value_t::object);
    for (const auto& [surface, target] : index.vocab.fold_table())
        if (surface != target) folds[surface] = target;  // identities are implied by `terms`
    vocab["folds"] = std::move(folds);
    j["vocabulary"] = std::move(vocab);

    nlohmann::ordered_json docs(nlohmann::json::value_t::array);
    for (const auto& m : index.documents) {
        nlohmann::ordered_json d;
        d["id"] = m.doc_id();
        nlohmann::ordered_json cells(nlohmann::json::value_t::array);
        for (const auto& t : m.triplets()) cells.push_back({t.i, t.j, t.weight});
        d["cells"] = std::move(cells);
        docs.push_back(std::move(d));
    }
    j["documents"] = std::move(docs);

    out << j.dump(1) << '\n';
}

void save_index(const CorpusIndex& index, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write index file: " + path.string());
    save_index(index, out);
}

CorpusIndex load_index(const std::filesystem::path& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed index " + path.string() + ": " + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != kIndexFormat)
            throw DataError("unsupported index format in " + path.string());

        CorpusIndex index;
        index.window = j.at("window").get<std::uint32_t>();

        const auto& vocab = j.at("vocabulary");
        std::map<std::string, std::string> folds;
        for (const auto& [surface, target] : vocab.at("folds").items())
            folds.emplace(surface, target.get<std::string>());
        index.vocab = Vocabulary::from_parts(vocab.at("terms").get<std::vector<std::string>>(), folds);

        const auto dim = static_cast<TermId>(index.vocab.size());
        for (const auto& d : j.at("documents")) {
            std::vector<Triplet> cells;
            cells.reserve(d.at("cells").size());
            for (const auto& c : d.at("cells"))
                cells.push_back({c.at(0).get<TermId>(), c.at(1).get<TermId>(), c.at(2).get<double>()});
            index.documents.emplace_back(d.at("id").get<std::string>(), dim, index.window,
                                         std::move(cells));
        }
        return index;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed index " + path.string() + ": " + e.what());
    }
}

}  // namespace halq
