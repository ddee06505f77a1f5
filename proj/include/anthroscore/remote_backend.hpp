#pragma once

#include <memory>
#include <string>

#include "anthroscore/backend.hpp"

namespace anthro {

// HTTP client for the fill-mask protocol:
//   POST {endpoint}/fill-mask
//   request  {"model", "text", "targets": [...]}
//   response {"model", "probabilities": {...}, "resolved_variants": {...}}
// 422 with {"error": "mask_tokenization"} means the mask did not occupy a
// single token position.  Transport failures are retried with exponential
// backoff (3 attempts) before BackendUnreachable is thrown.
//
// If ANTHROSCORE_API_TOKEN is set, it is sent as a bearer token.
class RemoteBackend : public FillMaskBackend {
 public:
  explicit RemoteBackend(BackendDescriptor descriptor);
  ~RemoteBackend() override;

  PronounDistribution fill_mask_pronouns(
      const std::string& masked_sentence,
      const PronounInventory& inventory) const override;

  const std::string& model_id() const override { return descriptor_.model_id; }

 private:
  BackendDescriptor descriptor_;
  std::string host_;       // scheme://host:port
  std::string base_path_;  // path prefix of the endpoint, possibly empty
};

}  // namespace anthro
