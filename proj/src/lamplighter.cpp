#include "ribe/lamplighter.hpp"
#include "ribe/common.hpp"

#include <algorithm>
#include <cmath>

namespace ribe {

void LampConfig::adjust(long long site, long long delta) {
    auto it = lamps.find(site);
    long long v = (it == lamps.end() ? 0 : it->second) + delta;
    if (v == 0) {
        if (it != lamps.end()) lamps.erase(it);
    } else if (it == lamps.end()) {
        lamps.emplace(site, v);
    } else {
        it->second = v;
    }
}

bool LampConfig::operator<(const LampConfig& o) const {
    if (pos != o.pos) return pos < o.pos;
    return lamps < o.lamps;
}

long long lamplighter_distance(const LampConfig& a, const LampConfig& b) {
    long long lamp_cost = 0;
    long long lo = std::min(a.pos, b.pos), hi = std::max(a.pos, b.pos);
    auto ia = a.lamps.begin(), ib = b.lamps.begin();
    auto note = [&](long long site, long long diff) {
        if (diff == 0) return;
        lamp_cost += std::abs(diff);
        lo = std::min(lo, site);
        hi = std::max(hi, site);
    };
    while (ia != a.lamps.end() || ib != b.lamps.end()) {
        if (ib == b.lamps.end() || (ia != a.lamps.end() && ia->first < ib->first)) {
            note(ia->first, ia->second);
            ++ia;
        } else if (ia == a.lamps.end() || ib->first < ia->first) {
            note(ib->first, -ib->second);
            ++ib;
        } else {
            note(ia->first, ia->second - ib->second);
            ++ia;
            ++ib;
        }
    }
    long long span = hi - lo;
    long long sweep1 = std::abs(a.pos - lo) + span + std::abs(hi - b.pos);
    long long sweep2 = std::abs(a.pos - hi) + span + std::abs(lo - b.pos);
    return lamp_cost + std::min(sweep1, sweep2);
}

std::vector<std::pair<LampConfig, int>> lamplighter_ball(int radius) {
    std::vector<std::pair<LampConfig, int>> out;
    std::map<LampConfig, int> seen;
    std::vector<LampConfig> frontier{LampConfig{}};
    seen[LampConfig{}] = 0;
    out.push_back({LampConfig{}, 0});
    for (int d = 1; d <= radius; ++d) {
        std::vector<LampConfig> next;
        for (const auto& c : frontier) {
            for (int gen = 0; gen < 4; ++gen) {
                LampConfig w = c;
                switch (gen) {
                    case 0: ++w.pos; break;
                    case 1: --w.pos; break;
                    case 2: w.adjust(w.pos, 1); break;
                    case 3: w.adjust(w.pos, -1); break;
                }
                if (seen.emplace(w, d).second) {
                    next.push_back(w);
                    out.push_back({std::move(w), d});
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

DriftProfile lamplighter_drift(int t_max, int trials, std::uint64_t seed) {
    if (t_max < 1 || trials < 1) throw invalid_parameter("t_max and trials must be >= 1");
    const int nblocks = 32;
    std::vector<std::vector<double>> sum(nblocks, std::vector<double>(t_max + 1, 0.0));
    std::vector<std::vector<double>> sumsq(nblocks, std::vector<double>(t_max + 1, 0.0));
    std::vector<std::vector<double>> lamp_sum(nblocks, std::vector<double>(t_max + 1, 0.0));

#pragma omp parallel for schedule(dynamic)
    for (int b = 0; b < nblocks; ++b) {
        int lo = static_cast<int>(static_cast<long long>(b) * trials / nblocks);
        int hi = static_cast<int>(static_cast<long long>(b + 1) * trials / nblocks);
        for (int trial = lo; trial < hi; ++trial) {
            SplitMix64 rng(seed + static_cast<std::uint64_t>(trial));
            LampConfig w;
            long long lamp_cost = 0;  // sum of |lamp values|, kept incrementally
            for (int t = 1; t <= t_max; ++t) {
                switch (rng.next_below(4)) {
                    case 0: ++w.pos; break;
                    case 1: --w.pos; break;
                    case 2: {
                        long long before = 0;
                        auto it = w.lamps.find(w.pos);
                        if (it != w.lamps.end()) before = it->second;
                        lamp_cost += std::abs(before + 1) - std::abs(before);
                        w.adjust(w.pos, 1);
                        break;
                    }
                    default: {
                        long long before = 0;
                        auto it = w.lamps.find(w.pos);
                        if (it != w.lamps.end()) before = it->second;
                        lamp_cost += std::abs(before - 1) - std::abs(before);
                        w.adjust(w.pos, -1);
                        break;
                    }
                }
                long long lo_site = std::min<long long>(w.pos, 0);
                long long hi_site = std::max<long long>(w.pos, 0);
                if (!w.lamps.empty()) {
                    lo_site = std::min(lo_site, w.lamps.begin()->first);
                    hi_site = std::max(hi_site, w.lamps.rbegin()->first);
                }
                long long span = hi_site - lo_site;
                long long sweep1 = std::abs(w.pos - lo_site) + span + std::abs(hi_site);
                long long sweep2 = std::abs(w.pos - hi_site) + span + std::abs(lo_site);
                double d = static_cast<double>(lamp_cost + std::min(sweep1, sweep2));
                sum[b][t] += d;
                sumsq[b][t] += d * d;
                lamp_sum[b][t] += static_cast<double>(lamp_cost);
            }
        }
    }

    DriftProfile out;
    out.mean.assign(t_max + 1, 0.0);
    out.stderr_.assign(t_max + 1, 0.0);
    out.lamp_mean.assign(t_max + 1, 0.0);
    out.travel_mean.assign(t_max + 1, 0.0);
    for (int t = 1; t <= t_max; ++t) {
        double s = 0.0, sq = 0.0, ls = 0.0;
        for (int b = 0; b < nblocks; ++b) {
            s += sum[b][t];
            sq += sumsq[b][t];
            ls += lamp_sum[b][t];
        }
        double mean = s / trials;
        out.mean[t] = mean;
        out.lamp_mean[t] = ls / trials;
        out.travel_mean[t] = mean - ls / trials;
        if (trials > 1) {
            double var = std::max(0.0, (sq / trials - mean * mean) * trials / (trials - 1));
            out.stderr_[t] = std::sqrt(var / trials);
        }
    }
    return out;
}

namespace {

double loglog_slope(const std::vector<double>& mean, int t_lo, int t_hi) {
    if (t_lo < 1 || t_hi <= t_lo || t_hi >= static_cast<int>(mean.size()))
        throw invalid_parameter("bad slope window");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int t = t_lo; t <= t_hi; ++t) {
        if (mean[t] <= 0.0) continue;
        double x = std::log(static_cast<double>(t)), y = std::log(mean[t]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw invalid_parameter("too few positive points for the slope");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}

double drift_loglog_slope(const DriftProfile& d, int t_lo, int t_hi) {
    return loglog_slope(d.mean, t_lo, t_hi);
}

double drift_exponent(const DriftProfile& d, int t_lo, int t_hi) {
    if (d.lamp_mean.size() != d.mean.size())
        throw invalid_parameter("profile lacks the component breakdown");
    return loglog_slope(d.lamp_mean, t_lo, t_hi);
}

}
