#include "chorc/fault.hpp"

#include <atomic>

namespace chorc::fault {

namespace {
std::atomic<Kind> g_active{Kind::none};
}

Kind active() { return g_active.load(std::memory_order_relaxed); }

Scope::Scope(Kind kind) : previous_(g_active.exchange(kind)) {}

Scope::~Scope() { g_active.store(previous_); }

}  // namespace chorc::fault
