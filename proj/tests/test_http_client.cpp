#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <thread>

#include "test_util.hpp"
#include "uccx/embedding_live.hpp"
#include "uccx/http_client.hpp"

using namespace uccx;

namespace {

/// Loopback stand-in for a chat/embedding endpoint.
class FakeEndpoint {
 public:
  FakeEndpoint() {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      int n = ++calls;
      last_auth = req.get_header_value("Authorization");
      last_body = json::parse(req.body);
      if (n <= fail_first) {
        res.status = fail_status;
        res.set_content("busy", "text/plain");
        return;
      }
      json body{{"choices", json::array({{{"message", {{"role", "assistant"}, {"content", "UC-Name: Order"}}}}})}};
      res.set_content(body.dump(), "application/json");
    });
    server_.Post("/v1/embeddings", [this](const httplib::Request& req, httplib::Response& res) {
      ++calls;
      last_body = json::parse(req.body);
      std::vector<double> v(dim, 0.0);
      v[req.body.size() % dim] = 1.0;
      res.set_content(json{{"data", json::array({{{"embedding", v}}})}}.dump(), "application/json");
    });
    server_.Post("/slow", [this](const httplib::Request&, httplib::Response& res) {
      int now = ++in_flight;
      int seen = peak.load();
      while (now > seen && !peak.compare_exchange_weak(seen, now)) {
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(30));
      --in_flight;
      res.set_content("{}", "application/json");
    });
    port = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEndpoint() {
    server_.stop();
    thread_.join();
  }

  HttpEndpointConfig config(const std::string& path) const {
    HttpEndpointConfig c;
    c.url = "http://127.0.0.1:" + std::to_string(port) + path;
    c.retry.initial_backoff = std::chrono::milliseconds(1);
    c.timeout = std::chrono::seconds(5);
    return c;
  }

  std::atomic<int> calls{0};
  std::atomic<int> in_flight{0};
  std::atomic<int> peak{0};
  int fail_first = 0;
  int fail_status = 500;
  size_t dim = 8;
  std::string last_auth;
  json last_body;
  int port = 0;

 private:
  httplib::Server server_;
  std::thread thread_;
};

struct EnvKey {
  explicit EnvKey(const char* value) {
    if (value) {
      setenv("UCCX_API_KEY", value, 1);
    } else {
      unsetenv("UCCX_API_KEY");
    }
  }
  ~EnvKey() { unsetenv("UCCX_API_KEY"); }
};

}  // namespace

TEST(JsonPoster, RetriesServerErrorsThenSucceeds) {
  FakeEndpoint ep;
  ep.fail_first = 2;
  JsonPoster poster(ep.config("/v1/chat/completions"));
  auto body = poster.post({{"x", 1}});
  EXPECT_EQ(ep.calls, 3);
  EXPECT_EQ(wire::chat_response_text(body), "UC-Name: Order");
}

TEST(JsonPoster, RetriesRateLimitAndGivesUp) {
  FakeEndpoint ep;
  ep.fail_first = 10;
  ep.fail_status = 429;
  JsonPoster poster(ep.config("/v1/chat/completions"));
  try {
    poster.post({{"x", 1}});
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_NE(std::string(e.what()).find("HTTP 429"), std::string::npos);
  }
  EXPECT_EQ(ep.calls, 3);
}

TEST(JsonPoster, ClientErrorsAreNotRetried) {
  FakeEndpoint ep;
  ep.fail_first = 10;
  ep.fail_status = 400;
  JsonPoster poster(ep.config("/v1/chat/completions"));
  EXPECT_THROW(poster.post({{"x", 1}}), TransportError);
  EXPECT_EQ(ep.calls, 1);
}

TEST(JsonPoster, UnreachableEndpointIsTransportError) {
  HttpEndpointConfig c;
  c.url = "http://127.0.0.1:1/v1/chat/completions";
  c.retry = {2, std::chrono::milliseconds(1)};
  c.timeout = std::chrono::seconds(2);
  JsonPoster poster(c);
  EXPECT_THROW(poster.post({}), TransportError);
  c.url = "no-scheme";
  EXPECT_THROW(JsonPoster{c}, TransportError);
}

TEST(JsonPoster, InFlightLimitHolds) {
  FakeEndpoint ep;
  auto cfg = ep.config("/slow");
  cfg.max_in_flight = 2;
  JsonPoster poster(cfg);
  std::vector<std::thread> threads;
  for (int i = 0; i < 6; ++i) threads.emplace_back([&] { poster.post({}); });
  for (auto& t : threads) t.join();
  EXPECT_LE(ep.peak.load(), 2);
  EXPECT_GE(ep.peak.load(), 1);
}

TEST(LiveChat, RequiresCredential) {
  FakeEndpoint ep;
  EnvKey none(nullptr);
  EXPECT_THROW(LiveChatProvider(ep.config("/v1/chat/completions")), LlmError);
}

TEST(LiveChat, SendsBearerAndWireShape) {
  FakeEndpoint ep;
  EnvKey key("test-key-123");
  LiveChatProvider live(ep.config("/v1/chat/completions"));
  ChatRequest req{"Extract this.", "gpt-3.5-turbo", 0.0, 256};
  auto resp = live.complete(req);
  EXPECT_EQ(resp.text, "UC-Name: Order");
  EXPECT_EQ(resp.request_fingerprint, fingerprint(req));
  EXPECT_EQ(ep.last_auth, "Bearer test-key-123");
  EXPECT_EQ(ep.last_body["model"], "gpt-3.5-turbo");
  EXPECT_EQ(ep.last_body["messages"][0]["content"], "Extract this.");
  EXPECT_EQ(ep.last_body["max_tokens"], 256);
  EXPECT_EQ(ep.last_body["temperature"], 0.0);
}

TEST(LiveChat, RecordingThenOfflineReplay) {
  FakeEndpoint ep;
  EnvKey key("k");
  testkit::TempDir dir;
  ReplayCache cache(dir / "cache");
  RecordingProvider rec(std::make_shared<LiveChatProvider>(ep.config("/v1/chat/completions")), cache);
  ChatRequest req{"Extract this.", "m", 0.0, 64};
  rec.complete(req);
  ReplayProvider replay(cache);
  EXPECT_EQ(replay.complete(req).text, "UC-Name: Order");
  EXPECT_EQ(ep.calls, 1);
}

TEST(WireFormat, MalformedBodiesRejected) {
  EXPECT_THROW(wire::chat_response_text(json{{"choices", json::array()}}), TransportError);
  EXPECT_THROW(wire::embedding_from(json{{"data", 3}}), TransportError);
  EXPECT_EQ(wire::embedding_request_body("e", "hi"), (json{{"model", "e"}, {"input", "hi"}}));
}

TEST(LiveEmbedding, CachesAndChecksDimension) {
  FakeEndpoint ep;
  EnvKey key("k");
  testkit::TempDir dir;
  EmbeddingCache cache(dir / "emb");
  auto live = std::make_unique<LiveEmbedder>(ep.config("/v1/embeddings"), "embed-model", 8);
  auto id = live->id();
  CachedEmbedder cached(id, 8, cache, std::move(live));
  auto v = cached.embed("order food");
  EXPECT_EQ(v.size(), 8u);
  EXPECT_EQ(cached.embed("order food"), v);
  EXPECT_EQ(ep.calls, 1);
  EXPECT_EQ(ep.last_body["model"], "embed-model");

  CachedEmbedder offline(id, 8, cache);
  EXPECT_EQ(offline.embed("order food"), v);
  EXPECT_THROW(offline.embed("never seen"), CacheMissError);

  LiveEmbedder wrong_dim(ep.config("/v1/embeddings"), "embed-model", 16);
  EXPECT_THROW(wrong_dim.embed("x"), LlmError);
}
