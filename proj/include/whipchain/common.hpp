#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace whipchain {

/// Bad input: wrong sizes, non-finite entries, out-of-range parameters.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The computation itself broke down: singular pivot, non-finite state,
/// violated stability bound.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double c) const { return {c * x, c * y}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
};

inline Vec2 operator*(double c, Vec2 v) { return {c * v.x, c * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }

/// Dense row-major matrix. Only used where a full table is the point
/// (inverse operators, Green tables); solvers stay O(n) elsewhere.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const std::vector<double>& data() const { return data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw validation_error(what);
}

inline void require_all_finite(const std::vector<double>& v, const std::string& name) {
  for (double x : v)
    if (!std::isfinite(x)) throw validation_error(name + " contains a non-finite value");
}

/// Thread cap for the few loops that parallelize (Green-table columns).
/// WHIPCHAIN_THREADS=k forces k; unset means hardware concurrency.
inline unsigned max_threads() {
  if (const char* env = std::getenv("WHIPCHAIN_THREADS")) {
    long k = std::strtol(env, nullptr, 10);
    if (k >= 1) return static_cast<unsigned>(k);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Static split of [begin, end) over at most max_threads() workers.
/// Deterministic as long as iterations write disjoint locations.
template <typename F>
void parallel_for(int begin, int end, F&& body) {
  const int count = end - begin;
  const unsigned workers = std::min<unsigned>(max_threads(), count > 0 ? count : 1);
  if (workers <= 1 || count <= 1) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (count + static_cast<int>(workers) - 1) / static_cast<int>(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const int lo = begin + static_cast<int>(w) * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace whipchain
