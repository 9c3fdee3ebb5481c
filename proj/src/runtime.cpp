#include "chorc/runtime.hpp"

#include <algorithm>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

namespace chorc {

std::string_view to_string(ExecOutcome o) {
  switch (o) {
    case ExecOutcome::terminated: return "terminated";
    case ExecOutcome::deadlocked: return "deadlocked";
    case ExecOutcome::step_limit: return "step-limit";
  }
  return "?";
}

namespace {

using BN = Behaviour::Node;

// What a blocked process is ready to do next.
struct Offer {
  enum class Kind { send, recv, select, branch, local };

  Kind kind;
  Pid peer;
  Value value = 0;
  std::optional<Var> target{};
  Label label = Label::left;
  bool has_left = false;
  bool has_right = false;
  std::optional<SpLabel> local{};
};

// What the sequencer decided for a committed offer.
struct Resolution {
  Value value = 0;
  Label label = Label::left;
};

struct Slot {
  Pid pid;
  // Owned by the process thread.
  Behaviour current;
  State store;
  // Guarded by the executor mutex.
  std::optional<Offer> offer;
  std::optional<Resolution> resolution;
  bool done = false;
};

struct Commit {
  SpLabel label;
  std::vector<std::pair<std::size_t, Resolution>> parties;
};

class Executor {
 public:
  Executor(const SPProgram& p, const State& s0, const RuntimeConfig& cfg) : program_(p), cfg_(cfg), shadow_(s0) {
    for (const auto& [pid, b] : p.net.entries()) {
      State own;
      for (const auto& [cell, v] : s0.cells()) {
        if (cell.first == pid) own.set(cell.first, cell.second, v);
      }
      index_.emplace(pid, slots_.size());
      slots_.push_back(std::make_unique<Slot>(Slot{pid, b, std::move(own), std::nullopt, std::nullopt, false}));
    }
    initial_ = s0;
  }

  ExecutionReport run() {
    ExecutionReport report;
    {
      std::vector<std::jthread> threads;
      threads.reserve(slots_.size());
      for (auto& slot : slots_) threads.emplace_back([this, s = slot.get()] { process(*s); });
      report.outcome = sequence(report.trace);
      {
        std::lock_guard lk(m_);
        stop_ = true;
      }
      cv_proc_.notify_all();
    }
    report.final_state = final_state();
    for (const auto& slot : slots_) report.final_net.set(slot->pid, slot->current);
    return report;
  }

 private:
  std::optional<Offer> make_offer(const Slot& me) const {
    using K = Offer::Kind;
    return std::visit(
        overloaded{
            [](const BN::End&) -> std::optional<Offer> { return std::nullopt; },
            [&](const BN::Send& x) -> std::optional<Offer> {
              Offer o{K::send, x.peer};
              o.value = eval_expr(x.expr, me.store, me.pid);
              return o;
            },
            [&](const BN::Recv& x) -> std::optional<Offer> {
              Offer o{K::recv, x.peer};
              o.target = x.target;
              return o;
            },
            [&](const BN::Select& x) -> std::optional<Offer> {
              Offer o{K::select, x.peer};
              o.label = x.label;
              return o;
            },
            [&](const BN::Branch& x) -> std::optional<Offer> {
              Offer o{K::branch, x.peer};
              o.has_left = x.on_left.has_value();
              o.has_right = x.on_right.has_value();
              return o;
            },
            [&](const BN::Cond&) -> std::optional<Offer> {
              Offer o{K::local, me.pid};
              o.local = SpLabel{SpLabel::Cond{me.pid}};
              return o;
            },
            [&](const BN::Call& x) -> std::optional<Offer> {
              Offer o{K::local, me.pid};
              o.local = SpLabel{SpLabel::Call{x.name, me.pid}};
              return o;
            },
        },
        me.current.node().v);
  }

  void advance(Slot& me, const Resolution& r) const {
    me.current = std::visit(overloaded{
                                [&](const BN::End&) { return me.current; },
                                [&](const BN::Send& x) { return x.cont; },
                                [&](const BN::Recv& x) {
                                  me.store.set(me.pid, x.target, r.value);
                                  return x.cont;
                                },
                                [&](const BN::Select& x) { return x.cont; },
                                [&](const BN::Branch& x) { return *x.option(r.label); },
                                [&](const BN::Cond& x) {
                                  return eval_bexpr(x.guard, me.store, me.pid) ? x.then_branch : x.else_branch;
                                },
                                [&](const BN::Call& x) { return program_.procs.at(x.name); },
                            },
                            me.current.node().v);
  }

  void process(Slot& me) {
    while (true) {
      auto offer = make_offer(me);
      std::unique_lock lk(m_);
      if (!offer) {
        me.done = true;
        cv_seq_.notify_one();
        return;
      }
      me.offer = std::move(offer);
      me.resolution.reset();
      cv_seq_.notify_one();
      cv_proc_.wait(lk, [&] { return stop_ || me.resolution.has_value(); });
      if (!me.resolution) return;
      Resolution r = *me.resolution;
      me.offer.reset();
      me.resolution.reset();
      lk.unlock();
      advance(me, r);
    }
  }

  bool quiescent() const {
    for (const auto& s : slots_) {
      if (!s->done && !(s->offer && !s->resolution)) return false;
    }
    return true;
  }

  // Enabled commits among the current offers, in pid order.
  std::vector<Commit> commits() const {
    using K = Offer::Kind;
    std::vector<Commit> out;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      const Slot& s = *slots_[i];
      if (!s.offer) continue;
      const Offer& o = *s.offer;
      if (o.kind == K::local) {
        out.push_back({*o.local, {{i, Resolution{}}}});
        continue;
      }
      if (o.kind != K::send && o.kind != K::select) continue;
      auto it = index_.find(o.peer);
      if (it == index_.end()) continue;
      const Slot& peer = *slots_[it->second];
      if (!peer.offer || peer.offer->peer != s.pid) continue;
      const Offer& po = *peer.offer;
      if (o.kind == K::send && po.kind == K::recv) {
        out.push_back({SpLabel{SpLabel::Com{s.pid, o.value, peer.pid, *po.target}},
                       {{i, Resolution{}}, {it->second, Resolution{o.value, Label::left}}}});
      } else if (o.kind == K::select && po.kind == K::branch &&
                 (o.label == Label::left ? po.has_left : po.has_right)) {
        out.push_back({SpLabel{SpLabel::Sel{s.pid, peer.pid, o.label}},
                       {{i, Resolution{}}, {it->second, Resolution{0, o.label}}}});
      }
    }
    return out;
  }

  ExecOutcome sequence(std::vector<SpTraceRecord>& trace) {
    Chooser chooser(SchedulerPolicy::random(cfg_.seed));
    std::unique_lock lk(m_);
    while (true) {
      if (!cv_seq_.wait_for(lk, cfg_.step_timeout, [&] { return quiescent(); })) return ExecOutcome::deadlocked;
      auto enabled = commits();
      if (enabled.empty()) {
        bool all_done = std::all_of(slots_.begin(), slots_.end(), [](const auto& s) { return s->done; });
        return all_done ? ExecOutcome::terminated : ExecOutcome::deadlocked;
      }
      if (trace.size() >= cfg_.max_steps) return ExecOutcome::step_limit;
      const Commit& c = enabled[chooser.pick(enabled.size())];
      std::uint64_t pre = shadow_.digest();
      if (const auto* com = std::get_if<SpLabel::Com>(&c.label.v)) shadow_.set(com->receiver, com->target, com->value);
      for (const auto& [i, r] : c.parties) slots_[i]->resolution = r;
      trace.push_back({trace.size() + 1, c.label, forget(c.label), pre, shadow_.digest()});
      cv_proc_.notify_all();
    }
  }

  State final_state() const {
    State out;
    for (const auto& [cell, v] : initial_.cells()) {
      if (!index_.count(cell.first)) out.set(cell.first, cell.second, v);
    }
    for (const auto& s : slots_) {
      for (const auto& [cell, v] : s->store.cells()) out.set(cell.first, cell.second, v);
    }
    return out;
  }

  const SPProgram& program_;
  RuntimeConfig cfg_;
  State initial_;
  State shadow_;
  std::vector<std::unique_ptr<Slot>> slots_;
  std::map<Pid, std::size_t> index_;

  std::mutex m_;
  std::condition_variable cv_seq_;
  std::condition_variable cv_proc_;
  bool stop_ = false;
};

}  // namespace

ExecutionReport execute(const SPProgram& p, const State& s0, const RuntimeConfig& cfg) {
  if (cfg.max_steps == 0) throw std::invalid_argument("max_steps must be at least 1");
  return Executor(p, s0, cfg).run();
}

TraceValidation validate_trace(const SPProgram& p, const State& s0, const ExecutionReport& report) {
  SPProgram cur = p;
  State s = s0;
  auto diverge = [](std::size_t i, std::string msg) { return TraceValidation{false, i, std::move(msg)}; };
  for (std::size_t i = 0; i < report.trace.size(); ++i) {
    const auto& rec = report.trace[i];
    if (rec.pre_digest != s.digest()) return diverge(i, "state digest before the step differs");
    if (!(forget(rec.rich) == rec.label)) return diverge(i, "observable label does not match the rich label");
    try {
      SpConfig next = sp_step(cur, s, rec.rich);
      cur = std::move(next.program);
      s = std::move(next.state);
    } catch (const NotEnabled& e) {
      return diverge(i, e.what());
    }
    if (rec.post_digest != s.digest()) return diverge(i, "state digest after the step differs");
  }
  if (!(cur.net == report.final_net) || !(s == report.final_state)) {
    return diverge(report.trace.size(), "final configuration differs from the replay");
  }
  return {};
}

}  // namespace chorc
