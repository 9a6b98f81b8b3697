#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace skdv {

// Worker count used by table builders; 1 means sequential.
int default_threads();
void set_default_threads(int n);

// Evaluate fn(state, item) for every item, with one state per worker built by
// make_state. Results come back in input order, so output does not depend on
// the worker count.
template <class Item, class Result, class MakeState, class Fn>
std::vector<Result> parallel_map(const std::vector<Item>& items, MakeState make_state, Fn fn,
                                 int threads = default_threads()) {
  std::vector<Result> out(items.size());
  std::size_t workers = threads < 1 ? 1 : static_cast<std::size_t>(threads);
  if (workers > items.size()) workers = items.size() ? items.size() : 1;
  if (workers == 1) {
    auto state = make_state();
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(state, items[i]);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        auto state = make_state();
        for (std::size_t i = w; i < items.size(); i += workers) out[i] = fn(state, items[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace skdv
