/*
   Copyright 2026 The strongconv Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "weingarten/profile.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

namespace strongconv::detail {

namespace {

std::mutex profile_mutex;
std::map<std::pair<int, Word>, std::shared_ptr<const WordProfile>> profile_cache;

} // namespace

std::shared_ptr<const WordProfile> cached_profile(ProfileKind kind, const Word& canonical,
                                                  const std::function<WordProfile(const Word&)>& build)
{
    const auto key = std::make_pair(static_cast<int>(kind), canonical);
    {
        std::lock_guard lock(profile_mutex);
        auto it = profile_cache.find(key);
        if (it != profile_cache.end())
            return it->second;
    }
    auto built = std::make_shared<const WordProfile>(build(canonical));
    std::lock_guard lock(profile_mutex);
    return profile_cache.emplace(key, built).first->second;
}

std::size_t profile_cache_size()
{
    std::lock_guard lock(profile_mutex);
    return profile_cache.size();
}

void parallel_chunks(std::uint64_t total,
                     const std::function<void(std::uint64_t, std::uint64_t, WordProfile&)>& work,
                     WordProfile& out)
{
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t workers = std::min<std::uint64_t>({hw, 16, std::max<std::uint64_t>(1, total / 4096)});
    if (workers <= 1) {
        work(0, total, out);
        return;
    }
    std::vector<WordProfile> parts(workers);
    std::vector<std::thread> threads;
    const std::uint64_t step = (total + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t lo = std::min(total, w * step);
        const std::uint64_t hi = std::min(total, lo + step);
        threads.emplace_back([&, lo, hi, w] { work(lo, hi, parts[w]); });
    }
    for (auto& t : threads)
        t.join();
    for (auto& p : parts)
        for (auto& [k, v] : p.counts)
            out.counts[k] += v;
}

} // namespace strongconv::detail
