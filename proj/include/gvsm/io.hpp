#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gvsm/dual.hpp"
#include "gvsm/groups.hpp"
#include "gvsm/matrix.hpp"
#include "gvsm/vsm.hpp"

namespace gvsm {

inline constexpr const char* index_magic = "GVSM-INDEX v1";

namespace detail {

inline std::string read_line_or_fail(std::istream& in, const std::string& what) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("unexpected end of input, expected " + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

inline double parse_double(const std::string& token, const std::string& context) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &consumed);
    } catch (const std::exception&) {
        throw ParseError(context + ": \"" + token + "\" is not a number");
    }
    if (consumed != token.size()) throw ParseError(context + ": \"" + token + "\" is not a number");
    if (!std::isfinite(value)) throw ParseError(context + ": \"" + token + "\" is not finite");
    return value;
}

inline long long parse_integer(const std::string& token, const std::string& context) {
    std::size_t consumed = 0;
    long long value = 0;
    try {
        value = std::stoll(token, &consumed);
    } catch (const std::exception&) {
        throw ParseError(context + ": \"" + token + "\" is not an integer");
    }
    if (consumed != token.size()) throw ParseError(context + ": \"" + token + "\" is not an integer");
    return value;
}

inline std::vector<std::string> split_tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

inline std::ifstream open_or_fail(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    return in;
}

}  // namespace detail

// --- matrix text format ----------------------------------------------------
// line 1: "<rows> <cols>"; then `rows` lines of `cols` space-separated
// decimals (scientific notation accepted). The writer emits 9 significant
// digits.

inline DenseMatrix read_matrix(std::istream& in) {
    const std::string header = detail::read_line_or_fail(in, "matrix header \"<rows> <cols>\"");
    const std::vector<std::string> dims = detail::split_tokens(header);
    if (dims.size() != 2) throw ParseError("matrix header must be \"<rows> <cols>\", got \"" + header + "\"");
    const long long rows = detail::parse_integer(dims[0], "matrix rows");
    const long long cols = detail::parse_integer(dims[1], "matrix cols");
    if (rows <= 0 || cols <= 0) throw ParseError("matrix dimensions must be positive, got " + header);
    DenseMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), 0.0);
    for (long long i = 0; i < rows; ++i) {
        const std::string line = detail::read_line_or_fail(in, "matrix row " + std::to_string(i + 1));
        const std::vector<std::string> tokens = detail::split_tokens(line);
        if (static_cast<long long>(tokens.size()) != cols)
            throw ParseError("matrix row " + std::to_string(i + 1) + " has " +
                             std::to_string(tokens.size()) + " entries, expected " + std::to_string(cols));
        for (long long j = 0; j < cols; ++j)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                detail::parse_double(tokens[static_cast<std::size_t>(j)],
                                     "matrix row " + std::to_string(i + 1));
    }
    return m;
}

inline void write_matrix(std::ostream& out, const DenseMatrix& m) {
    out << m.rows() << " " << m.cols() << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << " ";
            out << detail::fmt(m(i, j));
        }
        out << "\n";
    }
}

inline DenseMatrix read_matrix_file(const std::string& path) {
    std::ifstream in = detail::open_or_fail(path);
    return read_matrix(in);
}

// --- transform file ----------------------------------------------------
// Header line "kind: <orthogonal|scaling|borel|permutation|general>" followed
// by the matrix text format; permutation kind may instead supply
// "perm: g(0) g(1) ... g(n-1)".

inline GroupElement read_transform(std::istream& in) {
    const std::string header = detail::read_line_or_fail(in, "transform header \"kind: <kind>\"");
    std::vector<std::string> tokens = detail::split_tokens(header);
    if (tokens.size() != 2 || tokens[0] != "kind:")
        throw ParseError("transform header must be \"kind: <kind>\", got \"" + header + "\"");
    const std::optional<GroupKind> kind = parse_group_kind(tokens[1]);
    if (!kind) throw ParseError("unknown group kind \"" + tokens[1] + "\"");

    if (*kind == GroupKind::permutation) {
        const std::streampos mark = in.tellg();
        const std::string next = detail::read_line_or_fail(in, "permutation body");
        const std::vector<std::string> body = detail::split_tokens(next);
        if (!body.empty() && body[0] == "perm:") {
            std::vector<std::size_t> perm;
            for (std::size_t i = 1; i < body.size(); ++i) {
                const long long v = detail::parse_integer(body[i], "permutation image");
                if (v < 0) throw ParseError("permutation image must be nonnegative, got " + body[i]);
                perm.push_back(static_cast<std::size_t>(v));
            }
            return make_permutation(perm);
        }
        in.seekg(mark);
    }
    return make_element(read_matrix(in), *kind);
}

inline void write_transform(std::ostream& out, const GroupElement& g) {
    out << "kind: " << to_string(g.kind()) << "\n";
    if (g.kind() == GroupKind::permutation) {
        out << "perm:";
        for (std::size_t v : g.perm()) out << " " << v;
        out << "\n";
        return;
    }
    write_matrix(out, g.matrix());
}

inline GroupElement read_transform_file(const std::string& path) {
    std::ifstream in = detail::open_or_fail(path);
    return read_transform(in);
}

// --- corpus file -------------------------------------------------------
// UTF-8 text, one document per line, whitespace-separated tokens,
// doc_id = 1-based line number.

inline std::vector<std::string> read_corpus_lines(const std::string& path) {
    std::ifstream in = detail::open_or_fail(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

// --- index file: GVSM-INDEX v1 ------------------------------------------
// line 1: magic+version; line 2: scheme name; line 3: "<V> <N>";
// line 4: V terms; lines 5..4+V: "<df> <idf> <w_1> ... <w_N>".

namespace detail {

inline std::string scheme_name(const TermDocumentMatrix& tdm) {
    std::string name = to_string(tdm.scheme);
    if (tdm.transformed) name += "-transformed";
    return name;
}

}  // namespace detail

inline void write_index(std::ostream& out, const TermDocumentMatrix& tdm) {
    const std::size_t v = tdm.term_count();
    const std::size_t n = tdm.doc_count();
    out << index_magic << "\n";
    out << detail::scheme_name(tdm) << "\n";
    out << v << " " << n << "\n";
    for (std::size_t i = 0; i < v; ++i) out << (i ? " " : "") << tdm.vocabulary.term(i);
    out << "\n";
    for (std::size_t i = 0; i < v; ++i) {
        out << tdm.df[i] << " " << detail::fmt(tdm.idf.empty() ? 0.0 : tdm.idf[i]);
        for (std::size_t j = 0; j < n; ++j) out << " " << detail::fmt(tdm.weights(i, j));
        out << "\n";
    }
}

inline TermDocumentMatrix read_index(std::istream& in) {
    if (detail::read_line_or_fail(in, "index magic") != index_magic)
        throw ParseError(std::string("not a ") + index_magic + " file");
    std::string scheme_name = detail::read_line_or_fail(in, "scheme name");
    bool transformed = false;
    const std::string suffix = "-transformed";
    if (scheme_name.size() > suffix.size() &&
        scheme_name.compare(scheme_name.size() - suffix.size(), suffix.size(), suffix) == 0) {
        transformed = true;
        scheme_name.resize(scheme_name.size() - suffix.size());
    }
    WeightingScheme scheme;
    if (scheme_name == "tfidf") scheme = WeightingScheme::tfidf;
    else if (scheme_name == "frequency") scheme = WeightingScheme::frequency;
    else throw ParseError("unknown weighting scheme \"" + scheme_name + "\"");

    const std::vector<std::string> dims = detail::split_tokens(detail::read_line_or_fail(in, "\"<V> <N>\""));
    if (dims.size() != 2) throw ParseError("expected \"<V> <N>\" line");
    const long long v = detail::parse_integer(dims[0], "V");
    const long long n = detail::parse_integer(dims[1], "N");
    if (v <= 0 || n <= 0) throw ParseError("V and N must be positive");

    const std::vector<std::string> terms = detail::split_tokens(detail::read_line_or_fail(in, "terms"));
    if (static_cast<long long>(terms.size()) != v)
        throw ParseError("terms line has " + std::to_string(terms.size()) + " terms, expected " +
                         std::to_string(v));
    Vocabulary vocab;
    for (const std::string& t : terms) {
        if (vocab.find(t)) throw ParseError("duplicate term \"" + t + "\"");
        vocab.add(t);
    }

    DenseMatrix weights(static_cast<std::size_t>(v), static_cast<std::size_t>(n), 0.0);
    std::vector<std::size_t> df(static_cast<std::size_t>(v), 0);
    std::vector<double> idf;
    if (scheme == WeightingScheme::tfidf) idf.assign(static_cast<std::size_t>(v), 0.0);
    for (long long i = 0; i < v; ++i) {
        const std::string context = "term line " + std::to_string(i + 1);
        const std::vector<std::string> tk = detail::split_tokens(detail::read_line_or_fail(in, "term line"));
        if (static_cast<long long>(tk.size()) != n + 2)
            throw ParseError(context + " has " + std::to_string(tk.size()) + " fields, expected " +
                             std::to_string(n + 2));
        const long long dfi = detail::parse_integer(tk[0], context + " df");
        if (dfi < 1) throw ParseError(context + ": df must be >= 1");
        df[static_cast<std::size_t>(i)] = static_cast<std::size_t>(dfi);
        const double idfi = detail::parse_double(tk[1], context + " idf");
        if (scheme == WeightingScheme::tfidf) idf[static_cast<std::size_t>(i)] = idfi;
        for (long long j = 0; j < n; ++j)
            weights(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                detail::parse_double(tk[static_cast<std::size_t>(j + 2)], context);
    }
    return {std::move(vocab), std::move(weights), scheme, transformed, std::move(df), std::move(idf)};
}

inline TermDocumentMatrix read_index_file(const std::string& path) {
    std::ifstream in = detail::open_or_fail(path);
    return read_index(in);
}

inline void write_index_file(const std::string& path, const TermDocumentMatrix& tdm) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open file for writing: " + path);
    write_index(out, tdm);
}

// --- cost file ----------------------------------------------------------
// UTF-8 lines "term <space> decimal". Terms outside the vocabulary are
// rejected; blank lines are skipped.

inline std::map<std::string, double> read_costs(std::istream& in, const Vocabulary& vocab) {
    std::map<std::string, double> costs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::vector<std::string> tokens = detail::split_tokens(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 2)
            throw ParseError("cost line " + std::to_string(line_no) + " must be \"term value\", got \"" +
                             line + "\"");
        if (!vocab.find(tokens[0]))
            throw ParseError("cost line " + std::to_string(line_no) + ": term \"" + tokens[0] +
                             "\" is not in the vocabulary");
        if (costs.count(tokens[0]))
            throw ParseError("cost line " + std::to_string(line_no) + ": duplicate entry for term \"" +
                             tokens[0] + "\"");
        costs[tokens[0]] =
            detail::parse_double(tokens[1], "cost line " + std::to_string(line_no));
    }
    return costs;
}

inline std::map<std::string, double> read_costs_file(const std::string& path, const Vocabulary& vocab) {
    std::ifstream in = detail::open_or_fail(path);
    return read_costs(in, vocab);
}

}  // namespace gvsm
