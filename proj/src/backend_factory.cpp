#include "anthroscore/backend.hpp"
#include "anthroscore/cache.hpp"
#include "anthroscore/errors.hpp"
#include "anthroscore/remote_backend.hpp"

namespace anthro {

namespace {

std::unique_ptr<FillMaskBackend> make_uncached(const BackendDescriptor& descriptor) {
  switch (descriptor.kind) {
    case BackendKind::kRemote:
      return std::make_unique<RemoteBackend>(descriptor);
    case BackendKind::kStub: {
      // Stub flavor is selected by model_id: "stub-uniform" (default),
      // "stub-lexical", or "stub-table" (table stubs are built in code).
      if (descriptor.model_id == "stub-lexical") {
        return std::make_unique<StubBackend>(StubBackend::lexical());
      }
      return std::make_unique<StubBackend>(StubBackend::uniform());
    }
    case BackendKind::kCached:
      throw ConfigError("cached backend needs an inner kind; pass remote or stub "
                        "with a cache path");
  }
  throw ConfigError("unknown backend kind");
}

}  // namespace

std::unique_ptr<FillMaskBackend> make_backend(const BackendDescriptor& descriptor,
                                              const std::string& cache_path) {
  descriptor.validate();
  auto inner = make_uncached(descriptor);
  if (cache_path.empty()) return inner;
  return std::make_unique<CachedBackend>(
      std::move(inner), std::make_shared<DistributionCache>(cache_path));
}

}  // namespace anthro
