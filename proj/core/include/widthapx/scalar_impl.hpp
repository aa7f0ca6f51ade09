// Copyright 2026 The widthapx Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WIDTHAPX_SCALAR_IMPL_HPP_
#define WIDTHAPX_SCALAR_IMPL_HPP_

#include <algorithm>
#include <exception>
#include <thread>

namespace widthapx {

template <typename Fn>
void produce(int count, int threads, TableBuilder& out, const TableLayout& layout,
             bool instrumented, std::int64_t max_entries, Fn fn) {
  const int workers = std::max(1, std::min(threads, count / 64));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i, out);
    return;
  }
  std::vector<TableBuilder> parts;
  parts.reserve(workers);
  for (int w = 0; w < workers; ++w) parts.emplace_back(layout, instrumented, max_entries);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const int lo = static_cast<int>(static_cast<std::int64_t>(count) * w / workers);
      const int hi = static_cast<int>(static_cast<std::int64_t>(count) * (w + 1) / workers);
      try {
        for (int i = lo; i < hi; ++i) fn(i, parts[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const TableBuilder& p : parts) out.absorb(p);
}

}  // namespace widthapx

#endif  // WIDTHAPX_SCALAR_IMPL_HPP_
