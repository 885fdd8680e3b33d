// Copyright 2026 The cvqss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cvqss/backend.hpp"
#include "cvqss/sampled.hpp"

namespace cvqss {

/// Running means, variances and a block of covariances, mergeable across
/// shot blocks (pairwise update of Chan, Golub and LeVeque). Covariances are
/// kept between each of the first `rows` variables and every variable.
class MomentAccumulator {
  public:
    MomentAccumulator(std::size_t rows, std::size_t vars)
        : rows_(rows), vars_(vars), mean_(vars, 0.0), m2_(vars, 0.0), cross_(rows * vars, 0.0) {
        if (rows > vars) throw std::invalid_argument("more covariance rows than variables");
    }

    void add_block(std::span<const std::span<const double>> data) {
        if (data.size() != vars_) throw std::invalid_argument("block has the wrong number of variables");
        const std::size_t n = data.empty() ? 0 : data[0].size();
        if (n == 0) return;
        MomentAccumulator block(rows_, vars_);
        block.count_ = n;
        for (std::size_t v = 0; v < vars_; ++v) {
            if (data[v].size() != n) throw std::invalid_argument("ragged block");
            double s = 0.0;
            for (double x : data[v]) s += x;
            block.mean_[v] = s / static_cast<double>(n);
            double q = 0.0;
            for (double x : data[v]) q += (x - block.mean_[v]) * (x - block.mean_[v]);
            block.m2_[v] = q;
        }
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t v = 0; v < vars_; ++v) {
                double c = 0.0;
                const double mr = block.mean_[r];
                const double mv = block.mean_[v];
                for (std::size_t i = 0; i < n; ++i) c += (data[r][i] - mr) * (data[v][i] - mv);
                block.cross_[r * vars_ + v] = c;
            }
        }
        merge(block);
    }

    void merge(const MomentAccumulator& o) {
        if (o.rows_ != rows_ || o.vars_ != vars_) throw std::invalid_argument("incompatible accumulators");
        if (o.count_ == 0) return;
        if (count_ == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(count_);
        const double nb = static_cast<double>(o.count_);
        const double n = na + nb;
        std::vector<double> delta(vars_);
        for (std::size_t v = 0; v < vars_; ++v) delta[v] = o.mean_[v] - mean_[v];
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t v = 0; v < vars_; ++v)
                cross_[r * vars_ + v] += o.cross_[r * vars_ + v] + delta[r] * delta[v] * na * nb / n;
        for (std::size_t v = 0; v < vars_; ++v) {
            m2_[v] += o.m2_[v] + delta[v] * delta[v] * na * nb / n;
            mean_[v] += delta[v] * nb / n;
        }
        count_ += o.count_;
    }

    std::size_t count() const { return count_; }
    std::size_t rows() const { return rows_; }
    std::size_t vars() const { return vars_; }
    double mean(std::size_t v) const { return mean_[v]; }
    double variance(std::size_t v) const { return count_ > 1 ? m2_[v] / static_cast<double>(count_ - 1) : 0.0; }
    double covariance(std::size_t r, std::size_t v) const {
        return count_ > 1 ? cross_[r * vars_ + v] / static_cast<double>(count_ - 1) : 0.0;
    }

  private:
    std::size_t rows_;
    std::size_t vars_;
    std::size_t count_ = 0;
    std::vector<double> mean_;
    std::vector<double> m2_;
    std::vector<double> cross_;
};

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Empirical moments of a list of quadratures.
struct SampleStatistics {
    std::size_t shots = 0;
    std::vector<Estimate> means;
    std::vector<std::vector<Estimate>> covariance;  // diagonal holds variances

    const Estimate& variance(std::size_t i) const { return covariance[i][i]; }
};

inline SampleStatistics summarize(const MomentAccumulator& acc, std::size_t forms) {
    SampleStatistics st;
    st.shots = acc.count();
    const double n = static_cast<double>(acc.count());
    st.means.resize(forms);
    st.covariance.assign(forms, std::vector<Estimate>(forms));
    for (std::size_t i = 0; i < forms; ++i) st.means[i] = {acc.mean(i), std::sqrt(acc.variance(i) / n)};
    for (std::size_t i = 0; i < forms; ++i) {
        for (std::size_t j = 0; j < forms; ++j) {
            const double c = acc.covariance(i, j);
            // Standard error of a sample covariance of jointly Gaussian data.
            st.covariance[i][j] = {c, std::sqrt((acc.variance(i) * acc.variance(j) + c * c) / n)};
        }
    }
    return st;
}

namespace detail {
inline std::vector<double> draw_axis(std::mt19937_64& rng, double variance, std::size_t n) {
    std::vector<double> xs(n, 0.0);
    if (variance > 0.0) {
        std::normal_distribution<double> dist(0.0, std::sqrt(variance));
        for (auto& x : xs) x = dist(rng);
    }
    return xs;
}

inline std::vector<double> evaluate(const LinearForm& f, const std::vector<std::vector<double>>& axes, std::size_t n) {
    std::vector<double> out(n, f.mean);
    for (const auto& [id, c] : f.coeffs)
        for (std::size_t i = 0; i < n; ++i) out[i] += c * axes[id][i];
    return out;
}
}  // namespace detail

/// Draw every registered axis once per shot and evaluate the given forms.
/// Deterministic for a fixed seed and block size.
inline SampleStatistics monte_carlo_sample(const AxisRegistry& reg, const std::vector<LinearForm>& forms,
                                           std::size_t n_shots, std::uint64_t seed, std::size_t block = 1 << 14) {
    if (n_shots == 0) throw std::invalid_argument("need at least one shot");
    MomentAccumulator acc(forms.size(), forms.size());
    std::mt19937_64 rng(seed);
    for (std::size_t done = 0; done < n_shots;) {
        const std::size_t n = std::min(block, n_shots - done);
        std::vector<std::vector<double>> axes;
        axes.reserve(reg.size());
        for (const auto& axis : reg.axes()) axes.push_back(detail::draw_axis(rng, axis.variance, n));
        std::vector<std::vector<double>> values;
        values.reserve(forms.size());
        for (const auto& f : forms) values.push_back(detail::evaluate(f, axes, n));
        std::vector<std::span<const double>> spans(values.begin(), values.end());
        acc.add_block(spans);
        done += n;
    }
    return summarize(acc, forms.size());
}

inline SampleStatistics monte_carlo_sample(const AxisRegistry& reg, const std::vector<Mode>& modes,
                                           std::size_t n_shots, std::uint64_t seed) {
    std::vector<LinearForm> forms;
    for (const auto& m : modes) {
        forms.push_back(m.plus);
        forms.push_back(m.minus);
    }
    return monte_carlo_sample(reg, forms, n_shots, seed);
}

// ---------------------------------------------------------------------------
// Pipeline oracle

struct OracleSettings {
    std::size_t shots = 1'000'000;
    std::uint64_t seed = 1;
    std::size_t block = 1 << 14;
    double z_threshold = 5.0;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct OracleDeviation {
    std::string quantity;
    double analytic = 0.0;
    double sampled = 0.0;
    double std_error = 0.0;
    double z = 0.0;
    std::optional<AxisId> axis;
};

struct OracleReport {
    bool pass = true;
    double max_z = 0.0;
    OracleDeviation worst;
    std::size_t checks = 0;
    std::size_t shots = 0;
};

/// Moments gathered by replaying a pipeline on sampled shots: the pipeline's
/// output quadratures followed by every noise axis it drew.
struct PipelineSample {
    MomentAccumulator moments{0, 0};
    std::size_t n_forms = 0;
};

namespace detail {
inline double z_score(double diff, double se) {
    if (se > 1e-15) return std::abs(diff) / se;
    return std::abs(diff) < 1e-9 ? 0.0 : std::numeric_limits<double>::infinity();
}
}  // namespace detail

/// Compare exact forms against replayed samples: means, covariances between
/// the outputs, and each output's regression coefficient on each axis. The
/// last check localises a wrong coefficient to its axis.
inline OracleReport compare_moments(const AxisRegistry& reg, const std::vector<LinearForm>& analytic_forms,
                                    const std::vector<std::string>& names, const PipelineSample& sample,
                                    double z_threshold = 5.0) {
    const auto& acc = sample.moments;
    if (analytic_forms.size() != sample.n_forms || acc.vars() != sample.n_forms + reg.size())
        throw std::invalid_argument("analytic forms do not match the sampled pipeline");
    const double n = static_cast<double>(acc.count());
    OracleReport rep;
    rep.shots = acc.count();
    auto record = [&](OracleDeviation d) {
        ++rep.checks;
        if (d.z > rep.max_z || rep.checks == 1) {
            rep.max_z = std::max(rep.max_z, d.z);
            if (d.z >= rep.worst.z) rep.worst = std::move(d);
        }
    };
    const std::size_t nf = sample.n_forms;
    for (std::size_t i = 0; i < nf; ++i) {
        const double se = std::sqrt(acc.variance(i) / n);
        const double m = acc.mean(i);
        record({"mean(" + names[i] + ")", analytic_forms[i].mean, m, se,
                detail::z_score(m - analytic_forms[i].mean, se), std::nullopt});
        for (std::size_t j = i; j < nf; ++j) {
            const double exact = covariance(reg, analytic_forms[i], analytic_forms[j]);
            const double c = acc.covariance(i, j);
            const double cse = std::sqrt((acc.variance(i) * acc.variance(j) + c * c) / n);
            record({"cov(" + names[i] + "," + names[j] + ")", exact, c, cse, detail::z_score(c - exact, cse),
                    std::nullopt});
        }
        for (const auto& axis : reg.axes()) {
            if (axis.variance <= 0.0) continue;
            const std::size_t v = nf + axis.id;
            const double va = acc.variance(v);
            if (!(va > 0.0)) continue;
            const double est = acc.covariance(i, v) / va;
            const double resid = std::max(acc.variance(i) - est * est * va, 0.0);
            const double se = std::sqrt(resid / (n * va));
            const double exact = analytic_forms[i].coeff(axis.id);
            record({"coeff(" + names[i] + "; " + axis.label + ")", exact, est, se, detail::z_score(est - exact, se),
                    axis.id});
        }
    }
    rep.pass = rep.max_z < z_threshold;
    return rep;
}

inline std::vector<std::string> output_names(std::size_t modes) {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < modes; ++k) {
        names.push_back("out" + std::to_string(k) + ".plus");
        names.push_back("out" + std::to_string(k) + ".minus");
    }
    return names;
}

/// Replay `pipeline` on sampled shots. The pipeline is any callable taking a
/// backend by reference and returning a std::vector of its modes; it must
/// allocate axes in the same order on every call.
template <class Pipeline>
PipelineSample sample_pipeline(Pipeline&& pipeline, std::size_t n_axes, const OracleSettings& cfg) {
    if (cfg.shots == 0 || cfg.block == 0) throw std::invalid_argument("oracle needs shots and a block size");
    const std::size_t blocks = (cfg.shots + cfg.block - 1) / cfg.block;
    std::vector<std::optional<MomentAccumulator>> partial(blocks);
    std::size_t n_forms = 0;
    std::vector<std::exception_ptr> errors(blocks);

    auto run_block = [&](std::size_t b) {
        try {
            const std::size_t n = std::min(cfg.block, cfg.shots - b * cfg.block);
            auto net = make_sampled_backend(n, cfg.seed, b);
            auto outs = pipeline(net);
            if (net.registry().size() != n_axes)
                throw std::logic_error("pipeline allocated a different number of axes when sampled");
            std::vector<std::span<const double>> vars;
            for (const auto& m : outs) {
                vars.emplace_back(m.plus.values);
                vars.emplace_back(m.minus.values);
            }
            const std::size_t forms = vars.size();
            for (const auto& xs : net.source().axis_samples()) vars.emplace_back(xs);
            MomentAccumulator acc(forms, vars.size());
            acc.add_block(vars);
            partial[b] = std::move(acc);
        } catch (...) {
            errors[b] = std::current_exception();
        }
    };

    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, blocks));
    if (threads <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t b = t; b < blocks; b += threads) run_block(b);
            });
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    PipelineSample out;
    // Merge in block order so the result does not depend on the thread count.
    for (std::size_t b = 0; b < blocks; ++b) {
        if (b == 0) {
            out.moments = *partial[0];
            n_forms = out.moments.rows();
        } else {
            out.moments.merge(*partial[b]);
        }
    }
    out.n_forms = n_forms;
    return out;
}

/// Run `pipeline` once exactly and once on sampled shots, and compare.
template <class Pipeline>
OracleReport oracle_check(Pipeline&& pipeline, const OracleSettings& cfg = {}) {
    AnalyticBackend exact;
    auto outs = pipeline(exact);
    std::vector<LinearForm> forms;
    for (const auto& m : outs) {
        forms.push_back(m.plus);
        forms.push_back(m.minus);
    }
    auto sample = sample_pipeline(pipeline, exact.registry().size(), cfg);
    return compare_moments(exact.registry(), forms, output_names(outs.size()), sample, cfg.z_threshold);
}

}  // namespace cvqss
