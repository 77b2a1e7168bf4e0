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

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "socrates/embeddings.hpp"

namespace socrates::prior {

struct LocationClue {
    std::string text;

    static LocationClue make(std::string raw) {
        const auto begin = raw.find_first_not_of(" \t\r\n");
        const auto end = raw.find_last_not_of(" \t\r\n");
        if (begin == std::string::npos) {
            throw std::invalid_argument("location clue is empty");
        }
        return LocationClue{raw.substr(begin, end - begin + 1)};
    }
};

enum class SentenceOrigin { Replay, Http, Template };

struct SentenceBatch {
    std::vector<std::string> sentences;
    SentenceOrigin origin = SentenceOrigin::Replay;
};

/// Builds the language-model prompt for a location clue over the map labels.
inline std::string search_prompt(const LocationClue& clue,
                                 const std::vector<std::string>& labels) {
    std::ostringstream out;
    out << "The lab is composed of ";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i > 0) out << ", ";
        out << labels[i];
    }
    out << ". X is a " << clue.text << " but not always. Where can I find X in the lab?";
    return out.str();
}

/// Where generated sentences come from. Implementations must be safe for
/// concurrent generate() calls.
class SentenceSource {
public:
    virtual ~SentenceSource() = default;
    virtual SentenceBatch generate(const LocationClue& clue,
                                   const std::vector<std::string>& labels, int m) = 0;
};

/// Replays a fixed sentence file, one sentence per line. The file must hold
/// exactly the requested number of sentences.
class ReplaySentenceSource final : public SentenceSource {
public:
    explicit ReplaySentenceSource(std::string path) : path_(std::move(path)) {}

    SentenceBatch generate(const LocationClue&, const std::vector<std::string>&,
                           int m) override {
        std::ifstream in(path_);
        if (!in) throw std::runtime_error("cannot open sentence replay file: " + path_);
        SentenceBatch batch;
        batch.origin = SentenceOrigin::Replay;
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) batch.sentences.push_back(line);
        }
        if (static_cast<int>(batch.sentences.size()) != m) {
            std::ostringstream err;
            err << "sentence replay " << path_ << ": expected " << m << ", found "
                << batch.sentences.size();
            throw std::runtime_error(err.str());
        }
        return batch;
    }

private:
    std::string path_;
};

/// Degenerate source for smoke tests: emits M copies of "X can be found in
/// the <label>." where <label> maximizes clue/label embedding similarity.
class TemplateSentenceSource final : public SentenceSource {
public:
    explicit TemplateSentenceSource(const EmbeddingTable& table) : table_(&table) {}

    SentenceBatch generate(const LocationClue& clue, const std::vector<std::string>& labels,
                           int m) override {
        if (labels.empty()) throw std::invalid_argument("template source: no labels");
        const auto clue_vec = table_->phrase_vector(clue.text);
        std::string best = labels.front();
        double best_sim = -2.0;
        for (const auto& label : labels) {
            const auto label_vec = table_->phrase_vector(label);
            double sim = 0.0;
            if (clue_vec && label_vec) sim = cosine_similarity(*clue_vec, *label_vec);
            if (sim > best_sim) {
                best_sim = sim;
                best = label;
            }
        }
        SentenceBatch batch;
        batch.origin = SentenceOrigin::Template;
        batch.sentences.assign(static_cast<std::size_t>(m),
                               "X can be found in the " + best + ".");
        return batch;
    }

private:
    const EmbeddingTable* table_;
};

}  // namespace socrates::prior
