// JSON-over-HTTP POST with bounded retry and an in-flight limit, plus the
// provider wire format. Everything that knows a remote schema lives here.

#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "uccx/io.hpp"
#include "uccx/llm.hpp"

namespace uccx {

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};  // doubles after each failure
};

struct HttpEndpointConfig {
  std::string url;  // scheme://host[:port]/path
  std::string api_key_env = "UCCX_API_KEY";
  int max_in_flight = 2;
  RetryPolicy retry;
  std::chrono::seconds timeout{120};
};

/// Caps the number of concurrent requests sharing one limiter.
class InFlightLimiter {
 public:
  explicit InFlightLimiter(int limit) : available_(limit < 1 ? 1 : limit) {}

  class Slot {
   public:
    explicit Slot(InFlightLimiter& l) : l_(l) { l_.acquire(); }
    ~Slot() { l_.release(); }
    Slot(const Slot&) = delete;
    Slot& operator=(const Slot&) = delete;

   private:
    InFlightLimiter& l_;
  };

 private:
  void acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return available_ > 0; });
    --available_;
  }
  void release() {
    {
      std::lock_guard lock(mu_);
      ++available_;
    }
    cv_.notify_one();
  }

  std::mutex mu_;
  std::condition_variable cv_;
  int available_;
};

class JsonPoster {
 public:
  explicit JsonPoster(HttpEndpointConfig config)
      : config_(std::move(config)), limiter_(config_.max_in_flight) {
    auto scheme_end = config_.url.find("://");
    if (scheme_end == std::string::npos) throw TransportError("endpoint URL lacks a scheme: " + config_.url);
    auto path_start = config_.url.find('/', scheme_end + 3);
    origin_ = config_.url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : config_.url.substr(path_start);
  }

  const HttpEndpointConfig& config() const { return config_; }

  std::string api_key() const {
    const char* key = std::getenv(config_.api_key_env.c_str());
    return key ? key : "";
  }

  /// Retries transport failures, 429 and 5xx. Other statuses fail at once.
  json post(const json& body) {
    InFlightLimiter::Slot slot(limiter_);
    std::string last_error;
    auto backoff = config_.retry.initial_backoff;
    for (int attempt = 1; attempt <= config_.retry.max_attempts; ++attempt) {
      httplib::Client client(origin_);
      client.set_connection_timeout(config_.timeout);
      client.set_read_timeout(config_.timeout);
      client.set_write_timeout(config_.timeout);
      httplib::Headers headers;
      if (auto key = api_key(); !key.empty()) headers.emplace("Authorization", "Bearer " + key);
      auto res = client.Post(path_, headers, body.dump(), "application/json");
      if (res && res->status >= 200 && res->status < 300) {
        try {
          return json::parse(res->body);
        } catch (const json::parse_error& e) {
          throw TransportError("malformed response body from " + config_.url + ": " + e.what());
        }
      }
      if (!res) {
        last_error = httplib::to_string(res.error());
      } else {
        last_error = "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200);
        if (res->status != 429 && res->status < 500) break;
      }
      if (attempt < config_.retry.max_attempts) {
        std::this_thread::sleep_for(backoff);
        backoff *= 2;
      }
    }
    throw TransportError("POST " + config_.url + " failed: " + last_error);
  }

 private:
  HttpEndpointConfig config_;
  InFlightLimiter limiter_;
  std::string origin_;
  std::string path_;
};

/// Chat-completions wire format (OpenAI-compatible).
namespace wire {

inline json chat_request_body(const ChatRequest& r) {
  return json{{"model", r.model_id},
              {"messages", json::array({{{"role", "user"}, {"content", r.prompt}}})},
              {"temperature", r.temperature},
              {"max_tokens", r.max_output_tokens}};
}

inline std::string chat_response_text(const json& body) {
  try {
    return body.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw TransportError(std::string("unexpected chat response shape: ") + e.what());
  }
}

inline json embedding_request_body(const std::string& model, const std::string& input) {
  return json{{"model", model}, {"input", input}};
}

inline std::vector<double> embedding_from(const json& body) {
  try {
    return body.at("data").at(0).at("embedding").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw TransportError(std::string("unexpected embedding response shape: ") + e.what());
  }
}

}  // namespace wire

class LiveChatProvider : public ChatProvider {
 public:
  explicit LiveChatProvider(HttpEndpointConfig config) : poster_(std::move(config)) {
    if (poster_.api_key().empty()) {
      throw LlmError("live provider needs a credential in $" + poster_.config().api_key_env);
    }
  }

  std::string id() const override { return "live:" + poster_.config().url; }

  ChatResponse complete(const ChatRequest& req) override {
    check_request(req);
    auto body = poster_.post(wire::chat_request_body(req));
    return {wire::chat_response_text(body), id(), fingerprint(req), io::utc_timestamp()};
  }

 private:
  JsonPoster poster_;
};

}  // namespace uccx
