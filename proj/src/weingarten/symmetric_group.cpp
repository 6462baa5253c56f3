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

#include "weingarten/symmetric_group.hpp"

#include "common/error.hpp"
#include "common/json_io.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <mutex>
#include <shared_mutex>

namespace strongconv {

int partition_size(const IntPartition& p)
{
    return std::accumulate(p.begin(), p.end(), 0);
}

std::string partition_to_string(const IntPartition& p)
{
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(p[i]);
    }
    return s + ")";
}

namespace {

void gen_partitions(int remaining, int max_part, IntPartition& cur, std::vector<IntPartition>& out)
{
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        cur.push_back(part);
        gen_partitions(remaining - part, part, cur, out);
        cur.pop_back();
    }
}

void check_partition(const IntPartition& p)
{
    for (std::size_t i = 0; i < p.size(); ++i) {
        require(p[i] >= 1, ErrorCode::Domain, "partition parts must be positive");
        if (i)
            require(p[i] <= p[i - 1], ErrorCode::Domain, "partition parts must be weakly decreasing");
    }
}

} // namespace

std::vector<IntPartition> partitions(int L)
{
    require(L >= 0, ErrorCode::Domain, "partition size must be >= 0");
    std::vector<IntPartition> out;
    IntPartition cur;
    gen_partitions(L, L, cur, out);
    return out;
}

Integer dim_lambda(const IntPartition& lambda)
{
    check_partition(lambda);
    const int n = partition_size(lambda);
    Integer hooks = 1;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (int j = 0; j < lambda[i]; ++j) {
            int leg = 0;
            for (std::size_t k = i + 1; k < lambda.size() && lambda[k] > j; ++k)
                ++leg;
            hooks *= lambda[i] - j - 1 + leg + 1;
        }
    return factorial(static_cast<unsigned>(n)) / hooks;
}

std::vector<int> contents(const IntPartition& lambda)
{
    std::vector<int> c;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (int j = 0; j < lambda[i]; ++j)
            c.push_back(j - static_cast<int>(i));
    return c;
}

namespace {

std::shared_mutex char_mutex;
std::map<std::pair<IntPartition, IntPartition>, Integer> char_memo;

IntPartition normalize(IntPartition p)
{
    p.erase(std::remove(p.begin(), p.end(), 0), p.end());
    return p;
}

// Removes a border strip of length k from lambda, using the beta-set with
// m = len(lambda) beads at positions lambda_i + (m - 1 - i).
Integer mn(const IntPartition& lambda, const IntPartition& rho);

Integer mn_uncached(const IntPartition& lambda, const IntPartition& rho)
{
    if (rho.empty())
        return lambda.empty() ? 1 : 0;
    const int k = rho.front();
    const IntPartition rest(rho.begin() + 1, rho.end());
    const int m = static_cast<int>(lambda.size());
    std::vector<int> beads(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        beads[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] + (m - 1 - i);
    Integer total = 0;
    for (int i = 0; i < m; ++i) {
        const int b = beads[static_cast<std::size_t>(i)];
        const int target = b - k;
        if (target < 0 || std::find(beads.begin(), beads.end(), target) != beads.end())
            continue;
        int between = 0;
        for (int x : beads)
            if (x > target && x < b)
                ++between;
        std::vector<int> nb = beads;
        nb[static_cast<std::size_t>(i)] = target;
        std::sort(nb.begin(), nb.end(), std::greater<>());
        IntPartition mu(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j)
            mu[static_cast<std::size_t>(j)] = nb[static_cast<std::size_t>(j)] - (m - 1 - j);
        const Integer sub = mn(normalize(mu), rest);
        if (between % 2 == 0)
            total += sub;
        else
            total -= sub;
    }
    return total;
}

Integer mn(const IntPartition& lambda, const IntPartition& rho)
{
    const auto key = std::make_pair(lambda, rho);
    {
        std::shared_lock lock(char_mutex);
        auto it = char_memo.find(key);
        if (it != char_memo.end())
            return it->second;
    }
    Integer v = mn_uncached(lambda, rho);
    std::unique_lock lock(char_mutex);
    char_memo.emplace(key, v);
    return v;
}

} // namespace

Integer character(const IntPartition& lambda, const IntPartition& rho)
{
    check_partition(lambda);
    IntPartition r = rho;
    std::sort(r.begin(), r.end(), std::greater<>());
    check_partition(r);
    require(partition_size(lambda) == partition_size(r), ErrorCode::DimensionMismatch,
            "character needs |lambda| = |rho|");
    return mn(lambda, r);
}

std::size_t character_cache_size()
{
    std::shared_lock lock(char_mutex);
    return char_memo.size();
}

void load_character_cache(const std::filesystem::path& file)
{
    if (!std::filesystem::exists(file))
        return;
    const Json j = parse_json(read_text_file(file), file.string());
    if (!j.is_array())
        fail(ErrorCode::Parse, "character cache must be a JSON array");
    std::unique_lock lock(char_mutex);
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 3)
            fail(ErrorCode::Parse, "character cache entries are [lambda, rho, value]");
        char_memo.emplace(std::make_pair(e[0].get<IntPartition>(), e[1].get<IntPartition>()),
                          Integer(e[2].get<std::string>()));
    }
}

void save_character_cache(const std::filesystem::path& file)
{
    Json j = Json::array();
    {
        std::shared_lock lock(char_mutex);
        for (const auto& [k, v] : char_memo)
            j.push_back(Json::array({k.first, k.second, v.get_str()}));
    }
    write_text_file(file, j.dump());
}

Perm identity_perm(int n)
{
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm inverse(const Perm& p)
{
    Perm q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        q[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return q;
}

Perm compose(const Perm& a, const Perm& b)
{
    require(a.size() == b.size(), ErrorCode::DimensionMismatch, "permutation sizes differ");
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = a[static_cast<std::size_t>(b[i])];
    return c;
}

IntPartition cycle_type(const Perm& p)
{
    std::vector<char> seen(p.size(), 0);
    IntPartition t;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i])
            continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = 1;
            ++len;
        }
        t.push_back(len);
    }
    std::sort(t.begin(), t.end(), std::greater<>());
    return t;
}

int cycle_count(const Perm& p)
{
    return static_cast<int>(cycle_type(p).size());
}

bool next_perm(Perm& p)
{
    return std::next_permutation(p.begin(), p.end());
}

} // namespace strongconv
