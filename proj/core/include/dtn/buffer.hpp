#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dtn/message.hpp"

namespace dtn {

enum class EvictionPolicy {
  HighestPriorityFirst,  // recomputed FLC3 priority, acknowledged copies first
  OldestFirst,           // FIFO drop, acknowledged copies first
};

struct AdmitResult {
  bool admitted = false;
  std::vector<Message> evicted;
};

class Buffer {
 public:
  explicit Buffer(std::uint64_t capacity = 0) : capacity_(capacity) {}

  std::uint64_t capacity() const { return capacity_; }
  std::uint64_t occupancy() const { return occupancy_; }
  std::uint64_t free_bytes() const { return capacity_ - occupancy_; }

  bool holds(const std::string& id) const;
  Message* find(const std::string& id);
  const std::vector<Message>& messages() const { return messages_; }
  std::vector<Message>& messages() { return messages_; }

  // Makes room by evicting per policy, then stores the message.
  // `is_acked` marks delivered-acknowledged ids, which go first.
  // `priority_of` recomputes FLC3 priority for the priority policy.
  AdmitResult admit(Message incoming, EvictionPolicy policy,
                    const std::function<bool(const Message&)>& is_acked,
                    const std::function<double(const Message&)>& priority_of);

  // Removes the message with this id; returns it if present.
  std::vector<Message> remove_if(const std::function<bool(const Message&)>& pred);
  bool erase(const std::string& id);

 private:
  std::uint64_t capacity_;
  std::uint64_t occupancy_ = 0;
  std::vector<Message> messages_;  // arrival order
};

}  // namespace dtn
