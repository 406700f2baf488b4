// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RBSWEEP_PARALLEL_HPP
#define RBSWEEP_PARALLEL_HPP

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace rbsweep
{

// Runs f(i) for i in [0, count) on up to hardware_concurrency threads, in contiguous
// chunks. Results must be written to per-index slots. If several chunks throw, the
// exception from the lowest chunk is rethrown.
template <typename F>
void parallel_for(int count, F &&f)
{
  const int workers =
      std::max(1, std::min<int>(count, static_cast<int>(std::thread::hardware_concurrency())));
  if (workers <= 1)
  {
    for (int i = 0; i < count; i++)
    {
      f(i);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  const int chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; w++)
  {
    const int begin = w * chunk, end = std::min(count, begin + chunk);
    threads.emplace_back(
        [&, w, begin, end]()
        {
          try
          {
            for (int i = begin; i < end; i++)
            {
              f(i);
            }
          }
          catch (...)
          {
            errors[w] = std::current_exception();
          }
        });
  }
  for (auto &t : threads)
  {
    t.join();
  }
  for (const auto &error : errors)
  {
    if (error)
    {
      std::rethrow_exception(error);
    }
  }
}

}  // namespace rbsweep

#endif  // RBSWEEP_PARALLEL_HPP
