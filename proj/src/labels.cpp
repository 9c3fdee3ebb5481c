#include "chorc/labels.hpp"

namespace chorc {

namespace {

std::string name_of(const RecVar& x) { return x.str(); }
std::string name_of(const ProcRef& x) { return to_string(x); }

template <class ProcName>
std::string rich_to_string(const RichLabel<ProcName>& t) {
  using L = RichLabel<ProcName>;
  return std::visit(
      overloaded{
          [](const typename L::Com& c) {
            return "R_Com " + c.sender.str() + " " + std::to_string(c.value) + " " + c.receiver.str() +
                   " " + c.target.str();
          },
          [](const typename L::Sel& c) {
            return "R_Sel " + c.sender.str() + " " + c.receiver.str() + " " + std::string(to_string(c.label));
          },
          [](const typename L::Cond& c) { return "R_Cond " + c.pid.str(); },
          [](const typename L::Call& c) { return "R_Call " + name_of(c.name) + " " + c.pid.str(); },
      },
      t.v);
}

}  // namespace

std::vector<Pid> participants(const TLabel& t) {
  return std::visit(overloaded{
                        [](const TLabel::Com& c) { return std::vector<Pid>{c.sender, c.receiver}; },
                        [](const TLabel::Sel& c) { return std::vector<Pid>{c.sender, c.receiver}; },
                        [](const TLabel::Tau& c) { return std::vector<Pid>{c.pid}; },
                    },
                    t.v);
}

// Observable labels print in the argument order used by the literature:
// L_Com sender receiver value.
std::string to_string(const TLabel& t) {
  return std::visit(overloaded{
                        [](const TLabel::Com& c) {
                          return "L_Com " + c.sender.str() + " " + c.receiver.str() + " " + std::to_string(c.value);
                        },
                        [](const TLabel::Sel& c) {
                          return "L_Sel " + c.sender.str() + " " + c.receiver.str() + " " +
                                 std::string(to_string(c.label));
                        },
                        [](const TLabel::Tau& c) { return "L_Tau " + c.pid.str(); },
                    },
                    t.v);
}

std::string to_string(const CcLabel& t) { return rich_to_string(t); }
std::string to_string(const SpLabel& t) { return rich_to_string(t); }

}  // namespace chorc
