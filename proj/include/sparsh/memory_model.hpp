#ifndef SPARSH_MEMORY_MODEL_HPP
#define SPARSH_MEMORY_MODEL_HPP

/**
 * \file memory_model.hpp
 * \brief Analytical device-memory model for the two hybrid execution
 *        schemes; no device is touched.
 *
 * CI streams one level at a time through the device and re-transfers
 * matrices every cycle; MI keeps every level but the coarsest resident
 * and only moves the coarse rhs/solution per cycle. Byte accounting:
 * csr_bytes = nnz * (value_bytes + index_bytes) + (nrows + 1) * index_bytes,
 * vector_bytes = n * value_bytes. Overlapped transfers are represented
 * by event order only (a prefetch precedes the compute it overlaps);
 * the model reports bytes, never time.
 */

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sparsh/csr.hpp"
#include "sparsh/cycle.hpp"
#include "sparsh/hierarchy.hpp"

namespace sparsh {

/// Sizes of one stored value and one stored index.
struct BytesModel {
    long long value_bytes = 8;
    long long index_bytes = 4;

    void validate() const {
        if (value_bytes <= 0 || index_bytes <= 0)
            throw std::invalid_argument("BytesModel: byte sizes must be positive");
    }
};

inline long long csr_bytes(const CsrMatrix &A, const BytesModel &bm) {
    bm.validate();
    return static_cast<long long>(A.nnz()) * (bm.value_bytes + bm.index_bytes) +
           (static_cast<long long>(A.nrows()) + 1) * bm.index_bytes;
}

inline long long vector_bytes(index_t n, const BytesModel &bm) {
    bm.validate();
    return static_cast<long long>(n) * bm.value_bytes;
}

enum class Scheme { CI, MI };

inline const char *to_string(Scheme s) { return s == Scheme::CI ? "CI" : "MI"; }

/// One step of the modeled timeline. Transfers cross the bus, allocs and
/// evictions change device residency without traffic, computes change
/// neither.
struct MemoryEvent {
    enum class Kind {
        transfer_to_device,
        transfer_to_host,
        compute_device,
        compute_host,
        alloc_device,
        evict_device,
    };
    enum class Phase { setup, cycle };

    Kind kind;
    Phase phase;
    std::string object;
    long long bytes;
    int level;
};

inline const char *to_string(MemoryEvent::Kind k) {
    switch (k) {
    case MemoryEvent::Kind::transfer_to_device: return "transfer_to_device";
    case MemoryEvent::Kind::transfer_to_host: return "transfer_to_host";
    case MemoryEvent::Kind::compute_device: return "compute_device";
    case MemoryEvent::Kind::compute_host: return "compute_host";
    case MemoryEvent::Kind::alloc_device: return "alloc_device";
    default: return "evict_device";
    }
}

inline const char *to_string(MemoryEvent::Phase p) {
    return p == MemoryEvent::Phase::setup ? "setup" : "cycle";
}

/**
 * Ordered event trace of the setup phase plus one steady-state V-cycle,
 * with the derived byte totals. peak_device_bytes is the high-water mark
 * of the replayed trace; resident_setup_bytes is the residency right
 * after the setup events; per_cycle_transfer_bytes sums the transfer
 * events of the cycle phase in both directions.
 */
struct MemoryPlan {
    Scheme scheme;
    std::vector<MemoryEvent> events;
    long long peak_device_bytes = 0;
    long long resident_setup_bytes = 0;
    long long per_cycle_transfer_bytes = 0;
};

namespace detail {

/// Appends events while replaying residency per object. Re-transferring
/// or re-allocating a resident object overwrites it in place; evicting
/// or copying out an absent object is a modeling bug and throws.
class PlanBuilder {
public:
    explicit PlanBuilder(Scheme scheme) { plan_.scheme = scheme; }

    void to_device(std::string object, long long bytes, int level) {
        add_resident(object, bytes);
        push(MemoryEvent::Kind::transfer_to_device, std::move(object), bytes, level);
    }
    void alloc(std::string object, long long bytes, int level) {
        add_resident(object, bytes);
        push(MemoryEvent::Kind::alloc_device, std::move(object), bytes, level);
    }
    void to_host(std::string object, long long bytes, int level) {
        if (!resident_.count(object))
            throw std::logic_error("memory plan: transfer_to_host of absent " +
                                   object);
        push(MemoryEvent::Kind::transfer_to_host, std::move(object), bytes, level);
    }
    void evict(std::string object, int level) {
        const auto it = resident_.find(object);
        if (it == resident_.end())
            throw std::logic_error("memory plan: evicting absent " + object);
        const long long bytes = it->second;
        resident_bytes_ -= bytes;
        resident_.erase(it);
        push(MemoryEvent::Kind::evict_device, std::move(object), bytes, level);
    }
    void compute_device(std::string object, int level) {
        push(MemoryEvent::Kind::compute_device, std::move(object), 0, level);
    }
    void compute_host(std::string object, int level) {
        push(MemoryEvent::Kind::compute_host, std::move(object), 0, level);
    }

    void end_setup() {
        plan_.resident_setup_bytes = resident_bytes_;
        phase_ = MemoryEvent::Phase::cycle;
    }

    MemoryPlan take() && { return std::move(plan_); }

private:
    void add_resident(const std::string &object, long long bytes) {
        const auto it = resident_.find(object);
        if (it != resident_.end()) {
            resident_bytes_ -= it->second;
            it->second = bytes;
        } else {
            resident_.emplace(object, bytes);
        }
        resident_bytes_ += bytes;
        plan_.peak_device_bytes = std::max(plan_.peak_device_bytes, resident_bytes_);
    }

    void push(MemoryEvent::Kind kind, std::string object, long long bytes,
              int level) {
        if (phase_ == MemoryEvent::Phase::cycle &&
            (kind == MemoryEvent::Kind::transfer_to_device ||
             kind == MemoryEvent::Kind::transfer_to_host))
            plan_.per_cycle_transfer_bytes += bytes;
        plan_.events.push_back({kind, phase_, std::move(object), bytes, level});
    }

    MemoryPlan plan_;
    std::unordered_map<std::string, long long> resident_;
    long long resident_bytes_ = 0;
    MemoryEvent::Phase phase_ = MemoryEvent::Phase::setup;
};

inline std::string tag(const char *name, std::size_t level) {
    return std::string(name) + "[" + std::to_string(level) + "]";
}

} // namespace detail

/**
 * Level-streaming scheme: each down-step holds {A_i, P_i, A_{i+1}} plus
 * the vectors u_i, f_i, r_i, f_{i+1}; A_i and P_i leave the device after
 * restriction and return on the up-sweep, so every matrix crosses the
 * bus each cycle. The coarse system is solved on the host. The restricted
 * rhs is copied to the host and dropped from the device immediately.
 */
inline MemoryPlan plan_ci(const Hierarchy &h, const CycleParams &p,
                          const BytesModel &bm = {}) {
    (void)p; // smoothing counts do not change the byte model
    bm.validate();
    detail::PlanBuilder b(Scheme::CI);
    const std::size_t L = h.nlevels();
    if (L == 1) {
        b.end_setup();
        b.compute_host("coarse_solve", 0);
        return std::move(b).take();
    }

    const auto A_bytes = [&](std::size_t i) { return csr_bytes(h.level(i).A, bm); };
    const auto P_bytes = [&](std::size_t i) {
        return csr_bytes(*h.level(i).P_to_coarser, bm);
    };
    const auto vec = [&](std::size_t i) {
        return vector_bytes(h.level(i).A.nrows(), bm);
    };
    using detail::tag;

    b.to_device(tag("A", 0), A_bytes(0), 0);
    b.to_device(tag("u", 0), vec(0), 0);
    b.to_device(tag("f", 0), vec(0), 0);
    b.end_setup();

    for (std::size_t i = 0; i + 1 < L; ++i) {
        const int li = static_cast<int>(i);
        if (i > 0) {
            b.to_device(tag("f", i), vec(i), li);
            b.alloc(tag("u", i), vec(i), li);
        }
        b.to_device(tag("A", i + 1), A_bytes(i + 1), li + 1);
        b.to_device(tag("P", i), P_bytes(i), li);
        b.compute_device("presmooth", li);
        b.alloc(tag("r", i), vec(i), li);
        b.compute_device("residual", li);
        b.to_host(tag("u", i), vec(i), li);
        b.alloc(tag("f", i + 1), vec(i + 1), li + 1);
        b.compute_device("restrict", li);
        b.to_host(tag("f", i + 1), vec(i + 1), li + 1);
        b.evict(tag("f", i + 1), li + 1);
        if (i + 2 < L) {
            b.evict(tag("A", i), li);
            b.evict(tag("P", i), li);
            b.evict(tag("u", i), li);
            b.evict(tag("f", i), li);
            b.evict(tag("r", i), li);
        } else {
            b.evict(tag("r", i), li);
            b.evict(tag("A", i + 1), li + 1);
        }
    }

    const int lc = static_cast<int>(L) - 1;
    b.compute_host("coarse_solve", lc);
    b.to_device(tag("u", L - 1), vec(L - 1), lc);
    b.compute_device("prolongate", lc - 1);
    b.evict(tag("u", L - 1), lc);
    b.evict(tag("P", L - 2), lc - 1);

    for (std::size_t i = L - 1; i-- > 0;) {
        const int li = static_cast<int>(i);
        if (i > 0) {
            b.to_device(tag("P", i - 1), P_bytes(i - 1), li - 1);
            b.to_device(tag("u", i - 1), vec(i - 1), li - 1);
            b.to_device(tag("A", i - 1), A_bytes(i - 1), li - 1);
            b.to_device(tag("f", i - 1), vec(i - 1), li - 1);
        }
        b.compute_device("postsmooth", li);
        if (i > 0) {
            b.evict(tag("A", i), li);
            b.evict(tag("f", i), li);
            b.compute_device("prolongate", li - 1);
            b.evict(tag("u", i), li);
            b.evict(tag("P", i - 1), li - 1);
        } else {
            b.to_host(tag("u", 0), vec(0), 0);
        }
    }
    return std::move(b).take();
}

/**
 * Resident-hierarchy scheme: all matrices but the coarsest plus the
 * level vectors stay on the device from setup on; a cycle moves only the
 * coarse rhs down and the coarse solution back up.
 */
inline MemoryPlan plan_mi(const Hierarchy &h, const CycleParams &p,
                          const BytesModel &bm = {}) {
    (void)p;
    bm.validate();
    detail::PlanBuilder b(Scheme::MI);
    const std::size_t L = h.nlevels();
    if (L == 1) {
        b.end_setup();
        b.compute_host("coarse_solve", 0);
        return std::move(b).take();
    }

    const auto vec = [&](std::size_t i) {
        return vector_bytes(h.level(i).A.nrows(), bm);
    };
    using detail::tag;

    for (std::size_t i = 0; i + 1 < L; ++i) {
        const int li = static_cast<int>(i);
        b.to_device(tag("A", i), csr_bytes(h.level(i).A, bm), li);
        b.to_device(tag("P", i), csr_bytes(*h.level(i).P_to_coarser, bm), li);
    }
    b.to_device(tag("u", 0), vec(0), 0);
    b.to_device(tag("f", 0), vec(0), 0);
    b.alloc(tag("r", 0), vec(0), 0);
    for (std::size_t i = 1; i + 1 < L; ++i) {
        const int li = static_cast<int>(i);
        b.alloc(tag("u", i), vec(i), li);
        b.alloc(tag("f", i), vec(i), li);
        b.alloc(tag("r", i), vec(i), li);
    }
    const int lc = static_cast<int>(L) - 1;
    b.alloc(tag("u", L - 1), vec(L - 1), lc);
    b.alloc(tag("f", L - 1), vec(L - 1), lc);
    b.end_setup();

    for (std::size_t i = 0; i + 1 < L; ++i) {
        const int li = static_cast<int>(i);
        b.compute_device("presmooth", li);
        b.compute_device("residual", li);
        b.compute_device("restrict", li);
    }
    b.to_host(tag("f", L - 1), vec(L - 1), lc);
    b.compute_host("coarse_solve", lc);
    b.to_device(tag("u", L - 1), vec(L - 1), lc);
    for (std::size_t i = L - 1; i-- > 0;) {
        const int li = static_cast<int>(i);
        b.compute_device("prolongate", li);
        b.compute_device("postsmooth", li);
    }
    return std::move(b).take();
}

/// Both plans side by side for reporting.
struct SchemeComparison {
    MemoryPlan ci;
    MemoryPlan mi;
};

inline SchemeComparison compare_schemes(const Hierarchy &h, const CycleParams &p,
                                        const BytesModel &bm = {}) {
    return {plan_ci(h, p, bm), plan_mi(h, p, bm)};
}

} // namespace sparsh

#endif
