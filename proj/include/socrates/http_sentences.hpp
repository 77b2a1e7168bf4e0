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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "socrates/sentences.hpp"

namespace socrates::prior {

/// Name of the environment variable that points at the live text endpoint.
inline constexpr const char* kLlmUrlEnvVar = "SOCRATES_LLM_URL";

/// Raised when the endpoint is unreachable or answers badly. Carries the
/// prompt so the caller can save it for offline replay.
class HttpSourceError : public std::runtime_error {
public:
    HttpSourceError(const std::string& message, std::string prompt)
        : std::runtime_error(message + "\nprompt for offline replay:\n" + prompt),
          prompt_(std::move(prompt)) {}

    const std::string& prompt() const { return prompt_; }

private:
    std::string prompt_;
};

/// Generic JSON endpoint: POST {"prompt": ..., "n": ...} to <base>/generate
/// (or the bare base URL when it already names a path), expecting
/// {"sentences": [...]}.
class HttpSentenceSource final : public SentenceSource {
public:
    explicit HttpSentenceSource(std::string base_url) { parse_url(std::move(base_url)); }

    /// Uses SOCRATES_LLM_URL from the environment.
    static HttpSentenceSource from_env() {
        const char* url = std::getenv(kLlmUrlEnvVar);
        if (!url || !*url) {
            throw std::runtime_error(std::string("environment variable ") + kLlmUrlEnvVar +
                                     " is not set");
        }
        return HttpSentenceSource(url);
    }

    SentenceBatch generate(const LocationClue& clue, const std::vector<std::string>& labels,
                           int m) override {
        return generate_prompt(search_prompt(clue, labels), m);
    }

    /// Raw-prompt variant, e.g. for trajectory-description prompts.
    SentenceBatch generate_prompt(const std::string& prompt, int n) {
        nlohmann::json body;
        body["prompt"] = prompt;
        body["n"] = n;

        httplib::Client client(host_);
        client.set_connection_timeout(5, 0);
        client.set_read_timeout(30, 0);
        const auto res = client.Post(path_, body.dump(), "application/json");
        if (!res) {
            throw HttpSourceError("LLM endpoint unreachable: " + host_ + path_, prompt);
        }
        if (res->status != 200) {
            throw HttpSourceError(
                "LLM endpoint returned status " + std::to_string(res->status), prompt);
        }
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(res->body);
        } catch (const std::exception& e) {
            throw HttpSourceError(std::string("LLM endpoint sent invalid JSON: ") + e.what(),
                                  prompt);
        }
        SentenceBatch batch;
        batch.origin = SentenceOrigin::Http;
        for (const auto& s : parsed.at("sentences")) {
            batch.sentences.push_back(s.get<std::string>());
        }
        if (batch.sentences.empty()) {
            throw HttpSourceError("LLM endpoint returned no sentences", prompt);
        }
        return batch;
    }

private:
    void parse_url(std::string url) {
        // httplib takes scheme://host[:port] separately from the path.
        const auto scheme_end = url.find("://");
        std::string rest = scheme_end == std::string::npos ? url : url.substr(scheme_end + 3);
        const auto slash = rest.find('/');
        const std::string prefix =
            scheme_end == std::string::npos ? "http://" : url.substr(0, scheme_end + 3);
        if (slash == std::string::npos) {
            host_ = prefix + rest;
            path_ = "/generate";
        } else {
            host_ = prefix + rest.substr(0, slash);
            path_ = rest.substr(slash);
        }
    }

    std::string host_;
    std::string path_;
};

}  // namespace socrates::prior
