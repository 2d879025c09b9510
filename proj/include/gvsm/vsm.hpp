#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "gvsm/matrix.hpp"

namespace gvsm {

/// Ordered universe of distinct terms. Order is first occurrence during the
/// corpus scan: documents in file order, tokens left to right.
class Vocabulary {
public:
    /// Index of term, inserting it at the end if unseen.
    std::size_t add(const std::string& term) {
        auto it = index_.find(term);
        if (it != index_.end()) return it->second;
        const std::size_t id = terms_.size();
        terms_.push_back(term);
        index_.emplace(term, id);
        return id;
    }

    std::optional<std::size_t> find(const std::string& term) const {
        auto it = index_.find(term);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<std::string>& terms() const { return terms_; }
    const std::string& term(std::size_t i) const { return terms_[i]; }
    std::size_t size() const { return terms_.size(); }

private:
    std::vector<std::string> terms_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Token bags per document. doc_id is 1-based and equals the input line number.
struct Corpus {
    Vocabulary vocabulary;
    std::vector<std::vector<int>> docs;  // per-document term counts, dim = vocabulary size

    std::size_t doc_count() const { return docs.size(); }
    int term_frequency(std::size_t term_index, std::size_t doc_index) const {
        return docs[doc_index][term_index];
    }
};

enum class WeightingScheme { frequency, tfidf };

inline const char* to_string(WeightingScheme s) {
    return s == WeightingScheme::frequency ? "frequency" : "tfidf";
}

/// Weighted V x N term-by-document matrix. Rows follow vocabulary order,
/// columns follow document order. After a group action the `transformed` flag
/// is set and df/idf are retained for reference only.
struct TermDocumentMatrix {
    Vocabulary vocabulary;
    DenseMatrix weights;           // V x N
    WeightingScheme scheme = WeightingScheme::frequency;
    bool transformed = false;
    std::vector<std::size_t> df;   // per-term document frequency
    std::vector<double> idf;       // per-term log10(N/df); empty for the frequency scheme

    std::size_t term_count() const { return vocabulary.size(); }
    std::size_t doc_count() const { return weights.cols(); }
};

struct RankedEntry {
    std::size_t doc_id;  // 1-based
    double score;
};

/// Scores sorted descending, ties broken by ascending doc_id. Documents whose
/// column has zero norm carry a -infinity sentinel and sort last.
struct RankedList {
    std::vector<RankedEntry> entries;
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

}  // namespace detail

/// Build a corpus from text lines, one document per line, tokens split on
/// ASCII whitespace. No case folding, no stemming.
inline Corpus ingest(const std::vector<std::string>& text_lines) {
    if (text_lines.empty()) throw EmptyCorpusError("corpus is empty: no document lines");
    Corpus corpus;
    std::vector<std::vector<std::size_t>> doc_term_ids;
    doc_term_ids.reserve(text_lines.size());
    for (std::size_t line = 0; line < text_lines.size(); ++line) {
        const std::vector<std::string> tokens = detail::tokenize(text_lines[line]);
        if (tokens.empty())
            throw EmptyDocumentError("document on line " + std::to_string(line + 1) + " has no tokens");
        std::vector<std::size_t> ids;
        ids.reserve(tokens.size());
        for (const std::string& tok : tokens) ids.push_back(corpus.vocabulary.add(tok));
        doc_term_ids.push_back(std::move(ids));
    }
    const std::size_t v = corpus.vocabulary.size();
    corpus.docs.assign(doc_term_ids.size(), std::vector<int>(v, 0));
    for (std::size_t d = 0; d < doc_term_ids.size(); ++d)
        for (std::size_t id : doc_term_ids[d]) ++corpus.docs[d][id];
    return corpus;
}

namespace detail {

inline std::vector<std::size_t> document_frequencies(const Corpus& corpus) {
    std::vector<std::size_t> df(corpus.vocabulary.size(), 0);
    for (const auto& doc : corpus.docs)
        for (std::size_t t = 0; t < df.size(); ++t)
            if (doc[t] > 0) ++df[t];
    return df;
}

}  // namespace detail

/// Raw term-frequency weights: w[i,j] = tf[i,j].
inline TermDocumentMatrix frequency_weights(const Corpus& corpus) {
    const std::size_t v = corpus.vocabulary.size();
    const std::size_t n = corpus.doc_count();
    DenseMatrix w(v, n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < v; ++i) w(i, j) = static_cast<double>(corpus.docs[j][i]);
    return {corpus.vocabulary, std::move(w), WeightingScheme::frequency, false,
            detail::document_frequencies(corpus), {}};
}

/// tf-idf weights: w[i,j] = tf[i,j] * log10(N / df[i]). Every vocabulary term
/// occurs in at least one document, so df >= 1 by construction.
inline TermDocumentMatrix tfidf_weights(const Corpus& corpus) {
    const std::size_t v = corpus.vocabulary.size();
    const std::size_t n = corpus.doc_count();
    std::vector<std::size_t> df = detail::document_frequencies(corpus);
    std::vector<double> idf(v, 0.0);
    for (std::size_t i = 0; i < v; ++i)
        idf[i] = std::log10(static_cast<double>(n) / static_cast<double>(df[i]));
    DenseMatrix w(v, n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < v; ++i) w(i, j) = static_cast<double>(corpus.docs[j][i]) * idf[i];
    return {corpus.vocabulary, std::move(w), WeightingScheme::tfidf, false, std::move(df),
            std::move(idf)};
}

/// Embed query text into the index's term space: query tf combined with the
/// corpus statistics of the index's scheme. Out-of-vocabulary tokens are
/// dropped (optionally reported through dropped_out); the term universe is
/// fixed and transformations never introduce terms.
inline DenseVector embed_query(const std::string& query_text, const TermDocumentMatrix& tdm,
                               std::vector<std::string>* dropped_out = nullptr) {
    const std::size_t v = tdm.term_count();
    std::vector<int> tf(v, 0);
    bool any = false;
    for (const std::string& tok : detail::tokenize(query_text)) {
        if (auto id = tdm.vocabulary.find(tok)) {
            ++tf[*id];
            any = true;
        } else if (dropped_out) {
            dropped_out->push_back(tok);
        }
    }
    if (!any) throw EmptyQueryError("query has no in-vocabulary tokens: \"" + query_text + "\"");
    DenseVector q(v, 0.0);
    for (std::size_t i = 0; i < v; ++i) {
        if (tf[i] == 0) continue;
        q[i] = tdm.scheme == WeightingScheme::tfidf ? static_cast<double>(tf[i]) * tdm.idf[i]
                                                    : static_cast<double>(tf[i]);
    }
    return q;
}

/// Cosine of the angle between two nonzero vectors; in [-1, 1].
inline double cosine_similarity(const DenseVector& u, const DenseVector& v) {
    const double nu = norm(u);
    const double nv = norm(v);
    if (nu == 0.0 || nv == 0.0)
        throw ZeroVectorError("cosine similarity is undefined for a zero vector");
    return inner_product(u, v) / (nu * nv);
}

/// Rank documents by cosine similarity to the query. Zero-norm document
/// columns receive a -infinity sentinel so transform pipelines never abort.
inline RankedList rank_documents(const DenseVector& query, const TermDocumentMatrix& tdm) {
    if (query.dim() != tdm.term_count())
        throw ShapeError("query dimension " + std::to_string(query.dim()) +
                         " does not match vocabulary size " + std::to_string(tdm.term_count()));
    if (norm(query) == 0.0) throw ZeroVectorError("cannot rank with a zero query vector");
    RankedList out;
    out.entries.reserve(tdm.doc_count());
    for (std::size_t j = 0; j < tdm.doc_count(); ++j) {
        const DenseVector col = tdm.weights.col(j);
        const double score = norm(col) == 0.0 ? -std::numeric_limits<double>::infinity()
                                              : cosine_similarity(query, col);
        out.entries.push_back({j + 1, score});
    }
    std::stable_sort(out.entries.begin(), out.entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.doc_id < b.doc_id;
    });
    return out;
}

}  // namespace gvsm
