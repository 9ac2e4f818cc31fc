#include "dtn/buffer.hpp"

#include <algorithm>

namespace dtn {

bool Buffer::holds(const std::string& id) const {
  return std::any_of(messages_.begin(), messages_.end(),
                     [&](const Message& m) { return m.id == id; });
}

Message* Buffer::find(const std::string& id) {
  auto it = std::find_if(messages_.begin(), messages_.end(),
                         [&](const Message& m) { return m.id == id; });
  return it == messages_.end() ? nullptr : &*it;
}

AdmitResult Buffer::admit(Message incoming, EvictionPolicy policy,
                          const std::function<bool(const Message&)>& is_acked,
                          const std::function<double(const Message&)>& priority_of) {
  AdmitResult result;
  if (incoming.size > capacity_) return result;

  while (free_bytes() < incoming.size) {
    // Acknowledged copies are dead weight, clear those before anything else.
    std::size_t victim = messages_.size();
    for (std::size_t i = 0; i < messages_.size(); ++i) {
      if (is_acked(messages_[i])) {
        victim = i;
        break;
      }
    }
    if (victim == messages_.size()) {
      if (policy == EvictionPolicy::HighestPriorityFirst) {
        double best = -1.0;
        for (std::size_t i = 0; i < messages_.size(); ++i) {
          const double p = priority_of(messages_[i]);
          if (p > best) {
            best = p;
            victim = i;
          }
        }
      } else {
        victim = 0;  // oldest
      }
    }
    occupancy_ -= messages_[victim].size;
    result.evicted.push_back(std::move(messages_[victim]));
    messages_.erase(messages_.begin() + static_cast<std::ptrdiff_t>(victim));
  }

  occupancy_ += incoming.size;
  messages_.push_back(std::move(incoming));
  result.admitted = true;
  return result;
}

std::vector<Message> Buffer::remove_if(const std::function<bool(const Message&)>& pred) {
  std::vector<Message> removed;
  for (auto it = messages_.begin(); it != messages_.end();) {
    if (pred(*it)) {
      occupancy_ -= it->size;
      removed.push_back(std::move(*it));
      it = messages_.erase(it);
    } else {
      ++it;
    }
  }
  return removed;
}

bool Buffer::erase(const std::string& id) {
  auto it = std::find_if(messages_.begin(), messages_.end(),
                         [&](const Message& m) { return m.id == id; });
  if (it == messages_.end()) return false;
  occupancy_ -= it->size;
  messages_.erase(it);
  return true;
}

}  // namespace dtn
