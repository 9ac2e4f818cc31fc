#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dtn/buffer.hpp"

using namespace dtn;

namespace {

Message make(const std::string& id, std::uint64_t size, double priority = 0.0) {
  Message m;
  m.id = id;
  m.size = size;
  m.priority = priority;
  return m;
}

const auto kNoneAcked = [](const Message&) { return false; };
const auto kStoredPriority = [](const Message& m) { return m.priority; };

}  // namespace

TEST_CASE("admit and occupancy accounting") {
  Buffer b(1000);
  CHECK(b.admit(make("a", 400), EvictionPolicy::OldestFirst, kNoneAcked,
                kStoredPriority)
            .admitted);
  CHECK(b.admit(make("b", 500), EvictionPolicy::OldestFirst, kNoneAcked,
                kStoredPriority)
            .admitted);
  CHECK(b.occupancy() == 900);
  CHECK(b.free_bytes() == 100);
  CHECK(b.holds("a"));
  CHECK(b.holds("b"));
  REQUIRE(b.find("a") != nullptr);
  CHECK(b.find("a")->size == 400);
  CHECK(b.find("zzz") == nullptr);
}

TEST_CASE("a message larger than the whole buffer is refused without eviction") {
  Buffer b(1000);
  b.admit(make("a", 400), EvictionPolicy::OldestFirst, kNoneAcked, kStoredPriority);
  AdmitResult r = b.admit(make("huge", 1001), EvictionPolicy::OldestFirst, kNoneAcked,
                          kStoredPriority);
  CHECK(!r.admitted);
  CHECK(r.evicted.empty());
  CHECK(b.holds("a"));
  CHECK(b.occupancy() == 400);
}

TEST_CASE("oldest-first eviction drops in arrival order") {
  Buffer b(1000);
  b.admit(make("first", 400), EvictionPolicy::OldestFirst, kNoneAcked, kStoredPriority);
  b.admit(make("second", 400), EvictionPolicy::OldestFirst, kNoneAcked,
          kStoredPriority);
  AdmitResult r = b.admit(make("third", 600), EvictionPolicy::OldestFirst, kNoneAcked,
                          kStoredPriority);
  CHECK(r.admitted);
  REQUIRE(r.evicted.size() == 1);
  CHECK(r.evicted[0].id == "first");
  CHECK(b.holds("second"));
  CHECK(b.holds("third"));
  CHECK(b.occupancy() == 1000);
}

TEST_CASE("priority policy evicts the highest-priority resident first") {
  // Highest priority means closest to delivery usefulness elsewhere; the
  // policy sheds those before low-priority traffic.
  Buffer b(1000);
  b.admit(make("lo", 300, 0.2), EvictionPolicy::HighestPriorityFirst, kNoneAcked,
          kStoredPriority);
  b.admit(make("hi", 300, 0.9), EvictionPolicy::HighestPriorityFirst, kNoneAcked,
          kStoredPriority);
  b.admit(make("mid", 300, 0.5), EvictionPolicy::HighestPriorityFirst, kNoneAcked,
          kStoredPriority);
  AdmitResult r = b.admit(make("new", 500), EvictionPolicy::HighestPriorityFirst,
                          kNoneAcked, kStoredPriority);
  CHECK(r.admitted);
  REQUIRE(r.evicted.size() == 2);
  CHECK(r.evicted[0].id == "hi");
  CHECK(r.evicted[1].id == "mid");
  CHECK(b.holds("lo"));
  CHECK(b.holds("new"));
}

TEST_CASE("acknowledged copies are evicted before anything else") {
  Buffer b(1000);
  b.admit(make("keep", 400, 0.9), EvictionPolicy::HighestPriorityFirst, kNoneAcked,
          kStoredPriority);
  b.admit(make("acked", 400, 0.1), EvictionPolicy::HighestPriorityFirst, kNoneAcked,
          kStoredPriority);
  auto acked = [](const Message& m) { return m.id == "acked"; };
  AdmitResult r =
      b.admit(make("new", 500), EvictionPolicy::HighestPriorityFirst, acked,
              kStoredPriority);
  CHECK(r.admitted);
  REQUIRE(r.evicted.size() == 1);
  CHECK(r.evicted[0].id == "acked");  // despite "keep" having higher priority
  CHECK(b.holds("keep"));
}

TEST_CASE("remove_if and erase restore capacity") {
  Buffer b(1000);
  b.admit(make("a", 300), EvictionPolicy::OldestFirst, kNoneAcked, kStoredPriority);
  b.admit(make("b", 300), EvictionPolicy::OldestFirst, kNoneAcked, kStoredPriority);
  b.admit(make("c", 300), EvictionPolicy::OldestFirst, kNoneAcked, kStoredPriority);

  std::vector<Message> gone =
      b.remove_if([](const Message& m) { return m.id != "b"; });
  CHECK(gone.size() == 2);
  CHECK(b.occupancy() == 300);
  CHECK(b.holds("b"));

  CHECK(b.erase("b"));
  CHECK(!b.erase("b"));
  CHECK(b.occupancy() == 0);
  CHECK(b.messages().empty());
}
