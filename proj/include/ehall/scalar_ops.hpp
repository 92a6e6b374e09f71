#pragma once

#include <gmpxx.h>

namespace ehall {

// Uniform access to the few operations generic code needs, so plain rationals work too.
template <class T>
bool is_zero_of(const T& x) {
  return x.is_zero();
}
inline bool is_zero_of(const mpq_class& x) { return x == 0; }

template <class T>
T scaled_by(const T& x, const mpq_class& c) {
  return x.scaled(c);
}
inline mpq_class scaled_by(const mpq_class& x, const mpq_class& c) { return x * c; }

template <class T>
T conj_of(const T& x) {
  return x.conj();
}
inline mpq_class conj_of(const mpq_class& x) { return x; }

}  // namespace ehall
