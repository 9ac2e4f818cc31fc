#pragma once

#include <cstdint>
#include <string>

#include "dtn/social.hpp"

namespace dtn {

struct Message {
  std::string id;
  NodeId src = -1;
  NodeId dst = -1;
  std::uint64_t size = 0;  // bytes
  Seconds created_at = 0.0;
  Seconds initial_ttl = 0.0;
  int hop_count = 0;
  int copies = 1;          // replica budget L carried by this copy
  double priority = 0.0;   // cached crisp FLC3 value

  Seconds ttl_remaining(Seconds now) const {
    return initial_ttl - (now - created_at);
  }
  bool expired(Seconds now) const { return ttl_remaining(now) <= 0.0; }
};

}  // namespace dtn
