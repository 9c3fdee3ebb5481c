#pragma once

#include <cstddef>
#include <functional>

namespace chorc {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

template <class T>
void hash_combine_value(std::size_t& seed, const T& value) {
  hash_combine(seed, std::hash<T>{}(value));
}

}  // namespace chorc
