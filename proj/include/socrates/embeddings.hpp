// Copyright (c) 2026 Socrates Project Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace socrates::prior {

/// Lowercases, splits on non-alphanumerics, and drops tokens shorter than
/// two characters.
inline std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (const char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            if (cur.size() >= 2) tokens.push_back(cur);
            cur.clear();
        }
    }
    if (cur.size() >= 2) tokens.push_back(cur);
    return tokens;
}

inline double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

/// Word-to-vector table in word2vec text format: one "word v1 ... vD" line
/// each, with an optional "N D" header. Lookups are case-insensitive.
class EmbeddingTable {
public:
    EmbeddingTable() = default;

    explicit EmbeddingTable(std::size_t dimension) : dimension_(dimension) {}

    static EmbeddingTable load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open embeddings file: " + path);
        EmbeddingTable table;
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream ss(line);
            if (first) {
                // Optional "N D" header: two integer fields and nothing else.
                long n = 0, d = 0;
                std::istringstream probe(line);
                std::string extra;
                if (probe >> n >> d && !(probe >> extra)) {
                    first = false;
                    continue;
                }
            }
            first = false;
            std::string word;
            ss >> word;
            std::vector<double> vec;
            double v;
            while (ss >> v) vec.push_back(v);
            if (vec.empty()) throw std::runtime_error("embeddings: empty vector for " + word);
            table.insert(word, std::move(vec));
        }
        if (table.entries_.empty()) throw std::runtime_error("embeddings: empty table " + path);
        return table;
    }

    void insert(std::string word, std::vector<double> vec) {
        std::transform(word.begin(), word.end(), word.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (dimension_ == 0) dimension_ = vec.size();
        if (vec.size() != dimension_) {
            throw std::runtime_error("embeddings: inconsistent dimension for " + word);
        }
        entries_[std::move(word)] = std::move(vec);
    }

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return entries_.size(); }

    const std::vector<double>* lookup(const std::string& word) const {
        std::string key = word;
        std::transform(key.begin(), key.end(), key.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        const auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : &it->second;
    }

    /// Unnormalized mean of the in-vocabulary token vectors of `text`;
    /// nullopt when every token is out of vocabulary.
    std::optional<std::vector<double>> phrase_vector(const std::string& text) const {
        const auto tokens = tokenize(text);
        std::vector<double> sum(dimension_, 0.0);
        int found = 0;
        for (const auto& tok : tokens) {
            if (const auto* vec = lookup(tok)) {
                for (std::size_t i = 0; i < dimension_; ++i) sum[i] += (*vec)[i];
                ++found;
            }
        }
        if (found == 0) return std::nullopt;
        for (double& v : sum) v /= found;
        return sum;
    }

private:
    std::size_t dimension_ = 0;
    std::unordered_map<std::string, std::vector<double>> entries_;
};

}  // namespace socrates::prior
