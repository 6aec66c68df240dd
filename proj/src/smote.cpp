#include "xgewfi/smote.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "xgewfi/errors.hpp"
#include "xgewfi/rng.hpp"

namespace xgewfi {

namespace {

struct PoolJob {
    double class_label = 0.0;               // ignored for regression
    std::vector<std::size_t> rows;          // dataset row indices, ascending
    std::size_t added = 0;
};

// k lexicographically smallest (distance, pool position) pairs.
class NearestSet {
public:
    explicit NearestSet(std::size_t k) : k_(k) { entries_.reserve(k + 1); }

    void offer(double distance, std::size_t pos) {
        const std::pair<double, std::size_t> entry{distance, pos};
        if (entries_.size() == k_ && entries_.back() < entry) {
            return;
        }
        entries_.insert(std::upper_bound(entries_.begin(), entries_.end(), entry), entry);
        if (entries_.size() > k_) {
            entries_.pop_back();
        }
    }

    const std::vector<std::pair<double, std::size_t>>& entries() const { return entries_; }

private:
    std::size_t k_;
    std::vector<std::pair<double, std::size_t>> entries_;
};

double plain_distance(const Dataset& ds, std::size_t row_a, std::size_t row_b) {
    double sum = 0.0;
    for (std::size_t f = 0; f < ds.n_features(); ++f) {
        const double d = ds.columns[f][row_a] - ds.columns[f][row_b];
        sum += d * d;
    }
    return std::sqrt(sum);
}

}  // namespace

AugmentResult augment(const Dataset& ds, const AugmentConfig& cfg, Exec exec) {
    if (cfg.k < 1) {
        throw ConfigError("augment: k must be >= 1");
    }
    if (cfg.target_ratio < 1.0) {
        throw ConfigError("augment: target_ratio must be >= 1");
    }
    if (ds.any_missing()) {
        throw DataError("augment: dataset has missing cells; impute first");
    }
    const std::size_t n = ds.n_rows();

    std::vector<PoolJob> jobs;
    AugmentResult result{ds, {}};
    result.summary.original_rows = n;

    if (ds.kind == DatasetKind::Classification) {
        std::map<double, std::vector<std::size_t>> classes;
        for (std::size_t r = 0; r < n; ++r) {
            classes[ds.target[r]].push_back(r);
        }
        std::size_t majority = 0;
        for (const auto& [label, rows] : classes) {
            majority = std::max(majority, rows.size());
        }
        for (auto& [label, rows] : classes) {
            const auto grown = static_cast<std::size_t>(cfg.target_ratio *
                                                        static_cast<double>(rows.size()));
            const std::size_t target_size = std::min(grown, majority);
            PoolJob job;
            job.class_label = label;
            job.added = target_size > rows.size() ? target_size - rows.size() : 0;
            job.rows = std::move(rows);
            result.summary.per_class.push_back({label, job.rows.size(), job.added});
            jobs.push_back(std::move(job));
        }
    } else {
        PoolJob job;
        job.rows.resize(n);
        for (std::size_t r = 0; r < n; ++r) {
            job.rows[r] = r;
        }
        const auto grown = static_cast<std::size_t>(cfg.target_ratio * static_cast<double>(n));
        job.added = grown > n ? grown - n : 0;
        jobs.push_back(std::move(job));
    }

    // Draw every (base, neighbor choice, u) triple up front from the
    // per-row substream; neighbor lists are then computed only for the
    // bases actually drawn.
    struct Draw {
        std::size_t pool_base = 0;
        std::uint64_t neighbor_choice = 0;
        double u = 0.0;
    };

    std::size_t synth_index = 0;
    for (PoolJob& job : jobs) {
        if (job.added == 0) {
            continue;
        }
        if (job.rows.size() < cfg.k + 1) {
            if (ds.kind == DatasetKind::Classification) {
                char label[32];
                std::snprintf(label, sizeof(label), "%g", job.class_label);
                throw DataError(std::string("augment: class ") + label + " has " +
                                std::to_string(job.rows.size()) + " rows, need at least k+1 = " +
                                std::to_string(cfg.k + 1));
            }
            throw DataError("augment: pool of " + std::to_string(job.rows.size()) +
                            " rows, need at least k+1 = " + std::to_string(cfg.k + 1));
        }
        const std::size_t pool_size = job.rows.size();
        const std::size_t n_neighbors = std::min(cfg.k, pool_size - 1);

        std::vector<Draw> draws(job.added);
        for (std::size_t i = 0; i < job.added; ++i, ++synth_index) {
            Rng rng(derive_seed(cfg.seed, "smote-row", synth_index));
            draws[i].pool_base = static_cast<std::size_t>(rng.uniform_below(pool_size));
            draws[i].neighbor_choice = rng.uniform_below(n_neighbors);
            draws[i].u = rng.next_double();
        }

        std::vector<std::size_t> bases;
        bases.reserve(job.added);
        for (const Draw& d : draws) {
            bases.push_back(d.pool_base);
        }
        std::sort(bases.begin(), bases.end());
        bases.erase(std::unique(bases.begin(), bases.end()), bases.end());

        // pool position -> its n_neighbors nearest pool members
        std::vector<std::vector<std::size_t>> neighbor_lists(pool_size);
        const auto n_bases = static_cast<std::int64_t>(bases.size());
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::Parallel)
        for (std::int64_t b = 0; b < n_bases; ++b) {
            const std::size_t pos = bases[static_cast<std::size_t>(b)];
            NearestSet nearest(n_neighbors);
            for (std::size_t other = 0; other < pool_size; ++other) {
                if (other == pos) {
                    continue;
                }
                nearest.offer(plain_distance(ds, job.rows[pos], job.rows[other]), other);
            }
            auto& list = neighbor_lists[pos];
            list.reserve(nearest.entries().size());
            for (const auto& [dist, other] : nearest.entries()) {
                list.push_back(other);
            }
        }

        for (const Draw& d : draws) {
            const std::size_t base_row = job.rows[d.pool_base];
            const std::size_t neighbor_row =
                job.rows[neighbor_lists[d.pool_base][static_cast<std::size_t>(d.neighbor_choice)]];
            for (std::size_t f = 0; f < ds.n_features(); ++f) {
                const double x = ds.columns[f][base_row];
                const double y = ds.columns[f][neighbor_row];
                result.data.columns[f].push_back(x + d.u * (y - x));
                result.data.missing[f].push_back(0);
            }
            if (ds.kind == DatasetKind::Classification) {
                result.data.target.push_back(ds.target[base_row]);
            } else {
                const double t = ds.target[base_row];
                result.data.target.push_back(t + d.u * (ds.target[neighbor_row] - t));
            }
            result.summary.origins.push_back({base_row, neighbor_row, d.u});
        }
    }

    result.summary.synthetic_rows = result.summary.origins.size();
    return result;
}

}  // namespace xgewfi
