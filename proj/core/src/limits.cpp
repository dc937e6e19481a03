#include "gcalc/limits.hpp"

#include <string>

#include "gcalc/errors.hpp"

namespace gcalc {
namespace {
ResourceLimits& mutable_limits() {
  static ResourceLimits limits;
  return limits;
}
}  // namespace

const ResourceLimits& resource_limits() { return mutable_limits(); }

void set_resource_limits(const ResourceLimits& limits) { mutable_limits() = limits; }

ScopedResourceLimits::ScopedResourceLimits(const ResourceLimits& limits)
    : saved_(resource_limits()) {
  set_resource_limits(limits);
}

ScopedResourceLimits::~ScopedResourceLimits() { set_resource_limits(saved_); }

void require_within_limit(std::int64_t value, std::int64_t cap, std::string_view what) {
  if (value > cap) {
    throw ResourceLimitExceeded(std::string(what) + ": " + std::to_string(value) +
                                " exceeds configured cap " + std::to_string(cap));
  }
}

}  // namespace gcalc
