#include "leq/varname.hpp"

namespace leq {

namespace {
std::atomic<std::uint32_t> g_fresh{0};
}

std::uint32_t next_fresh_id() { return ++g_fresh; }
void reset_fresh_ids() { g_fresh.store(0); }

VarName VarName::freshened() const {
  return VarName(base_, decos_, next_fresh_id());
}

std::string VarName::display() const {
  std::string s = base_;
  if (fresh_ != 0) {
    s += '_';
    s += std::to_string(fresh_);
  }
  for (Deco d : decos_) s += (d == Deco::Prime) ? "'" : "^*";
  return s;
}

}  // namespace leq
