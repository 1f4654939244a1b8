// Remote embedding endpoint, plus a content-addressed vector cache that
// doubles as a replay source for offline re-evaluation.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uccx/http_client.hpp"
#include "uccx/metrics.hpp"

namespace uccx {

/// Layout: <root>/<fp[0..2]>/<fp>.json, fp = sha256(embedder id + "\n" + text).
class EmbeddingCache {
 public:
  explicit EmbeddingCache(fs::path root) : root_(std::move(root)) {}

  static std::string key(const std::string& embedder_id, const std::string& text) {
    return io::sha256_hex(embedder_id + "\n" + text);
  }

  fs::path path_for(const std::string& fp) const { return root_ / fp.substr(0, 2) / (fp + ".json"); }

  std::optional<std::vector<double>> get(const std::string& embedder_id, const std::string& text) const {
    auto path = path_for(key(embedder_id, text));
    if (!fs::exists(path)) return std::nullopt;
    return io::read_json(path).at("vector").get<std::vector<double>>();
  }

  void put(const std::string& embedder_id, const std::string& text, const std::vector<double>& v) const {
    io::write_json_atomic(path_for(key(embedder_id, text)),
                          json{{"embedder_id", embedder_id}, {"text", text}, {"vector", v}});
  }

 private:
  fs::path root_;
};

class LiveEmbedder : public Embedder {
 public:
  LiveEmbedder(HttpEndpointConfig config, std::string model, size_t dim = 1024)
      : poster_(std::move(config)), model_(std::move(model)), dim_(dim) {
    if (poster_.api_key().empty()) {
      throw LlmError("live embedder needs a credential in $" + poster_.config().api_key_env);
    }
  }

  std::string id() const override { return "live:" + model_; }
  size_t dim() const override { return dim_; }

  std::vector<double> embed(const std::string& s) override {
    auto v = wire::embedding_from(poster_.post(wire::embedding_request_body(model_, s)));
    if (v.size() != dim_) {
      throw TransportError("embedding has dimension " + std::to_string(v.size()) + ", expected " +
                           std::to_string(dim_));
    }
    return v;
  }

 private:
  JsonPoster poster_;
  std::string model_;
  size_t dim_;
};

/// Serves vectors from the cache; on a miss asks `inner` (and records the
/// answer) or, with no inner embedder, fails.
class CachedEmbedder : public Embedder {
 public:
  CachedEmbedder(std::string id, size_t dim, EmbeddingCache cache, std::shared_ptr<Embedder> inner = nullptr)
      : id_(std::move(id)), dim_(dim), cache_(std::move(cache)), inner_(std::move(inner)) {}

  std::string id() const override { return id_; }
  size_t dim() const override { return dim_; }

  std::vector<double> embed(const std::string& s) override {
    if (auto hit = cache_.get(id_, s)) return *hit;
    if (!inner_) throw CacheMissError(EmbeddingCache::key(id_, s));
    auto v = inner_->embed(s);
    cache_.put(id_, s, v);
    return v;
  }

 private:
  std::string id_;
  size_t dim_;
  EmbeddingCache cache_;
  std::shared_ptr<Embedder> inner_;
};

}  // namespace uccx
