// Chat-completion access behind one interface, with offline providers.
//
//   MockProvider       fixture text keyed by the scenario embedded in the prompt
//   ReplayProvider     responses from a content-addressed cache directory
//   RecordingProvider  decorator that writes every response into that cache
//
// The HTTP provider lives in llm_live.hpp.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uccx/annotation.hpp"
#include "uccx/corpus.hpp"
#include "uccx/io.hpp"
#include "uccx/parser.hpp"

namespace uccx {

struct ChatRequest {
  std::string prompt;
  std::string model_id;
  double temperature = 0.0;
  int max_output_tokens = 1024;

  bool operator==(const ChatRequest&) const = default;
};

struct ChatResponse {
  std::string text;
  std::string provider_id;
  std::string request_fingerprint;
  std::string timestamp;
};

class LlmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TransportError : public LlmError {
 public:
  using LlmError::LlmError;
};

class CacheMissError : public LlmError {
 public:
  explicit CacheMissError(std::string fingerprint)
      : LlmError("replay cache miss for request " + fingerprint),
        fingerprint_(std::move(fingerprint)) {}
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  std::string fingerprint_;
};

class FixtureError : public LlmError {
 public:
  using LlmError::LlmError;
};

inline json request_to_json(const ChatRequest& r) {
  return json{{"prompt", r.prompt},
              {"model_id", r.model_id},
              {"temperature", r.temperature},
              {"max_output_tokens", r.max_output_tokens}};
}

inline ChatRequest request_from_json(const json& j) {
  return {j.at("prompt").get<std::string>(), j.at("model_id").get<std::string>(),
          j.at("temperature").get<double>(), j.at("max_output_tokens").get<int>()};
}

/// sha256 over the canonical (sorted-key) JSON form of every request field.
inline std::string fingerprint(const ChatRequest& r) {
  return io::sha256_hex(request_to_json(r).dump());
}

inline void check_request(const ChatRequest& r) {
  if (r.prompt.empty()) throw LlmError("chat request has an empty prompt");
  if (r.temperature < 0) throw LlmError("chat request temperature must be >= 0");
  if (r.max_output_tokens <= 0) throw LlmError("chat request max_output_tokens must be positive");
}

class ChatProvider {
 public:
  virtual ~ChatProvider() = default;
  virtual std::string id() const = 0;
  virtual ChatResponse complete(const ChatRequest& req) = 0;
};

// ---------------------------------------------------------------------------
// Replay cache

/// Layout: <root>/<fp[0..2]>/<fp>.json holding {fingerprint, request, response}.
class ReplayCache {
 public:
  explicit ReplayCache(fs::path root) : root_(std::move(root)) {}

  const fs::path& root() const { return root_; }

  fs::path path_for(const std::string& fp) const { return root_ / fp.substr(0, 2) / (fp + ".json"); }

  std::optional<ChatResponse> get(const std::string& fp) const {
    auto path = path_for(fp);
    if (!fs::exists(path)) return std::nullopt;
    auto doc = io::read_json(path);
    const auto& r = doc.at("response");
    return ChatResponse{r.at("text").get<std::string>(), r.at("provider_id").get<std::string>(),
                        fp, r.value("timestamp", "")};
  }

  void put(const ChatRequest& req, const ChatResponse& resp) const {
    auto fp = fingerprint(req);
    json doc{{"fingerprint", fp},
             {"request", request_to_json(req)},
             {"response",
              {{"text", resp.text},
               {"provider_id", resp.provider_id},
               {"timestamp", resp.timestamp}}}};
    io::write_json_atomic(path_for(fp), doc);
  }

 private:
  fs::path root_;
};

class ReplayProvider : public ChatProvider {
 public:
  explicit ReplayProvider(ReplayCache cache) : cache_(std::move(cache)) {}

  std::string id() const override { return "replay"; }

  ChatResponse complete(const ChatRequest& req) override {
    check_request(req);
    auto fp = fingerprint(req);
    auto hit = cache_.get(fp);
    if (!hit) throw CacheMissError(fp);
    return *hit;
  }

 private:
  ReplayCache cache_;
};

class RecordingProvider : public ChatProvider {
 public:
  RecordingProvider(std::shared_ptr<ChatProvider> inner, ReplayCache cache)
      : inner_(std::move(inner)), cache_(std::move(cache)) {}

  std::string id() const override { return inner_->id(); }

  ChatResponse complete(const ChatRequest& req) override {
    auto resp = inner_->complete(req);
    cache_.put(req, resp);
    return resp;
  }

 private:
  std::shared_ptr<ChatProvider> inner_;
  ReplayCache cache_;
};

// ---------------------------------------------------------------------------
// Response rendering (the layout parse_response reads back)

namespace render_detail {

inline bool needs_quotes(const std::string& e) {
  auto cps = text::decode_utf8(e);
  if (cps.empty()) return false;
  return parse_detail::is_quote(cps.front()) || parse_detail::is_quote(cps.back()) ||
         parse_detail::strip_bullet(e).has_value() || parse_detail::dict_entry(e).has_value();
}

inline std::string protect(const std::string& e) { return needs_quotes(e) ? "\"" + e + "\"" : e; }

inline bool comma_safe(const std::vector<std::string>& elements) {
  for (const auto& e : elements) {
    for (char32_t c : text::decode_utf8(e)) {
      if (c == ',' || c == '"' || c == 0x201C || c == 0x201D) return false;
    }
    if (needs_quotes(e)) return false;
  }
  return true;
}

}  // namespace render_detail

/// Seven headings, one per line. Name/User/System/ET elements are
/// comma-separated on the heading line; Goal/DPs/Steps elements are "- "
/// sub-lines. Empty slots read "None". A short component whose elements
/// cannot be comma-joined unambiguously falls back to the sub-line layout.
inline std::string render_response(const UCComponents& c) {
  using namespace render_detail;
  std::string out;
  for (auto kind : kAllComponents) {
    const auto& elements = c[kind];
    out += component_label(kind);
    out += ":";
    if (elements.empty()) {
      out += " None\n";
    } else if (is_short_component(kind) && comma_safe(elements)) {
      out += " " + text::join(elements, ", ") + "\n";
    } else {
      out += "\n";
      for (const auto& e : elements) out += "- " + protect(e) + "\n";
    }
  }
  return out;
}

inline ChatResponse mock_from_ground_truth(const GroundTruth& gt) {
  return {render_response(gt.components), "mock-ground-truth",
          io::sha256_hex("ground-truth:" + gt.scenario_id), io::utc_timestamp()};
}

// ---------------------------------------------------------------------------
// Mock

/// Answers with the fixture registered for whichever corpus scenario's text
/// appears in the prompt (longest match wins).
class MockProvider : public ChatProvider {
 public:
  MockProvider(const Corpus& corpus, std::map<std::string, std::string> fixtures)
      : fixtures_(std::move(fixtures)) {
    for (const auto& s : corpus.scenarios()) texts_.emplace_back(s.id, s.text);
  }

  static MockProvider from_ground_truth(const Corpus& corpus,
                                        const std::map<std::string, GroundTruth>& truth) {
    std::map<std::string, std::string> fixtures;
    for (const auto& [id, gt] : truth) fixtures[id] = mock_from_ground_truth(gt).text;
    return MockProvider(corpus, std::move(fixtures));
  }

  std::string id() const override { return "mock"; }

  std::optional<std::string> scenario_for(const std::string& prompt) const {
    const std::pair<std::string, std::string>* best = nullptr;
    for (const auto& entry : texts_) {
      if (prompt.find(entry.second) != std::string::npos &&
          (!best || entry.second.size() > best->second.size())) {
        best = &entry;
      }
    }
    if (!best) return std::nullopt;
    return best->first;
  }

  ChatResponse complete(const ChatRequest& req) override {
    check_request(req);
    auto sid = scenario_for(req.prompt);
    if (!sid) throw FixtureError("mock provider: prompt matches no corpus scenario");
    auto it = fixtures_.find(*sid);
    if (it == fixtures_.end()) throw FixtureError("mock provider: no fixture for scenario '" + *sid + "'");
    return {it->second, id(), fingerprint(req), io::utc_timestamp()};
  }

 private:
  std::vector<std::pair<std::string, std::string>> texts_;
  std::map<std::string, std::string> fixtures_;
};

/// Fixture file: JSON object mapping scenario id to raw response text.
inline std::map<std::string, std::string> load_fixtures(const fs::path& path) {
  return io::read_json(path).get<std::map<std::string, std::string>>();
}

}  // namespace uccx
