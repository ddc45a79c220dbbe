#include "mdm/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include <json.hpp>

#include "mdm/bounds.hpp"
#include "mdm/error.hpp"

namespace mdm {

namespace {

constexpr const char* kReasonNames[] = {"UNOBTAINABLE", "IN_TARGET_BOX", "BOUND_PROVED",
                                        "SUBDIVIDED", "BUDGET_EXHAUSTED"};

double ulp_of(double v) {
    v = std::fabs(v);
    return std::nextafter(v, INFINITY) - v;
}

struct Evaluation {
    double L_center, err;
};

std::optional<Evaluation> evaluate(const ParamBox& b) {
    try {
        double l = total_length_L(b.center_point(), ChainPolicy::Extended).lo();
        double e = err(b).hi();
        if (!std::isfinite(l) || !std::isfinite(e)) return std::nullopt;
        return Evaluation{l, e};
    } catch (const Error&) {
        return std::nullopt;
    }
}

bool proves(double L_center, double e, double L0) { return rnd::sub_down(L_center, e) >= L0; }

using BoxKey = std::array<double, 12>;

BoxKey key_of(const ParamBox& b) {
    BoxKey k;
    std::copy(b.center.begin(), b.center.end(), k.begin());
    std::copy(b.half.begin(), b.half.end(), k.begin() + 6);
    return k;
}

double volume(const ParamBox& b) {
    double v = 1.0;
    for (double h : b.half) v *= 2.0 * h;
    return v;
}

} // namespace

const char* to_string(Reason r) { return kReasonNames[static_cast<int>(r)]; }

Reason reason_from_string(const std::string& s) {
    for (int i = 0; i < 5; ++i)
        if (s == kReasonNames[i]) return static_cast<Reason>(i);
    throw MalformedRecord("unknown reason '" + s + "'");
}

double default_L0() { return total_length_L(reference_point()).lo(); }

std::vector<ParamBox> subdivide(const ParamBox& b) {
    std::array<std::array<double, 2>, 6> centers;
    std::array<double, 6> halves;
    for (int i = 0; i < 6; ++i) {
        double h2 = b.half[i] * 0.5;
        if (b.half[i] == 0.0) {
            centers[i] = {b.center[i], b.center[i]};
            halves[i] = 0.0;
            continue;
        }
        centers[i] = {b.center[i] - h2, b.center[i] + h2};
        // Covers the rounding of the child centres.
        halves[i] = rnd::add_up(h2, ulp_of(std::fabs(b.center[i]) + b.half[i]));
    }
    std::vector<ParamBox> out;
    out.reserve(64);
    for (int mask = 0; mask < 64; ++mask) {
        ParamBox c;
        for (int i = 0; i < 6; ++i) {
            c.center[i] = centers[i][(mask >> i) & 1];
            c.half[i] = halves[i];
        }
        out.push_back(c);
    }
    return out;
}

CertificateRecord process_box(const ParamBox& b, const SearchConfig& cfg, int depth) {
    CertificateRecord rec;
    rec.box = b;
    rec.depth = depth;
    if (is_unobtainable(b)) {
        rec.reason = Reason::Unobtainable;
        return rec;
    }
    if (in_target_box(b)) {
        rec.reason = Reason::InTargetBox;
        return rec;
    }
    if (auto ev = evaluate(b)) {
        rec.L_center = ev->L_center;
        rec.err = ev->err;
        if (proves(ev->L_center, ev->err, cfg.L0)) {
            rec.reason = Reason::BoundProved;
            return rec;
        }
    }
    rec.reason = depth + 1 >= cfg.depth_limit ? Reason::BudgetExhausted : Reason::Subdivided;
    return rec;
}

SearchResult run_search(const SearchConfig& cfg) {
    if (cfg.depth_limit < 1) throw DomainViolation("depth_limit must be at least 1");
    if (!(cfg.L0 > 0)) throw DomainViolation("L0 must be positive");

    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    std::optional<clock::time_point> deadline;
    if (cfg.time_budget_s)
        deadline = start + std::chrono::duration_cast<clock::duration>(
                               std::chrono::duration<double>(*cfg.time_budget_s));

    std::mutex mu;
    std::condition_variable cv;
    std::deque<std::pair<ParamBox, int>> queue{{cfg.root, 0}};
    std::size_t in_flight = 0;
    SearchResult result;

    auto worker = [&] {
        std::unique_lock lock(mu);
        for (;;) {
            cv.wait(lock, [&] { return !queue.empty() || in_flight == 0; });
            if (queue.empty()) return;
            auto [box, depth] = queue.front();
            queue.pop_front();
            ++in_flight;
            lock.unlock();

            CertificateRecord rec;
            if (deadline && clock::now() >= *deadline) {
                rec.box = box;
                rec.depth = depth;
                rec.reason = Reason::BudgetExhausted;
            } else {
                rec = process_box(box, cfg, depth);
            }
            std::vector<ParamBox> children;
            if (rec.reason == Reason::Subdivided) children = subdivide(box);

            lock.lock();
            for (auto& c : children) queue.emplace_back(c, depth + 1);
            result.records.push_back(std::move(rec));
            --in_flight;
            cv.notify_all();
        }
    };

    int n = std::max(1, cfg.workers);
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    sort_canonical(result.records);
    auto& s = result.summary;
    for (const auto& r : result.records) {
        ++s.counts[static_cast<int>(r.reason)];
        s.max_depth = std::max(s.max_depth, r.depth);
    }
    s.success = s.count(Reason::BudgetExhausted) == 0;
    s.wall_seconds = std::chrono::duration<double>(clock::now() - start).count();
    return result;
}

bool canonical_less(const CertificateRecord& a, const CertificateRecord& b) {
    if (a.depth != b.depth) return a.depth < b.depth;
    return key_of(a.box) < key_of(b.box);
}

void sort_canonical(std::vector<CertificateRecord>& records) {
    std::sort(records.begin(), records.end(), canonical_less);
}

std::string to_json_line(const CertificateRecord& r) {
    nlohmann::json j;
    j["box"] = {{"center", r.box.center}, {"half", r.box.half}};
    j["reason"] = to_string(r.reason);
    if (r.L_center) j["L_center"] = *r.L_center;
    if (r.err) j["err"] = *r.err;
    j["depth"] = r.depth;
    return j.dump();
}

CertificateRecord parse_json_line(const std::string& line) {
    try {
        auto j = nlohmann::json::parse(line);
        if (!j.is_object()) throw MalformedRecord("record is not an object");
        for (auto it = j.begin(); it != j.end(); ++it) {
            const auto& k = it.key();
            if (k != "box" && k != "reason" && k != "L_center" && k != "err" && k != "depth")
                throw MalformedRecord("unexpected field '" + k + "'");
        }
        CertificateRecord r;
        const auto& box = j.at("box");
        auto c = box.at("center").get<std::vector<double>>();
        auto h = box.at("half").get<std::vector<double>>();
        if (box.size() != 2 || c.size() != 6 || h.size() != 6)
            throw MalformedRecord("box needs six centres and six half-widths");
        for (int i = 0; i < 6; ++i) {
            if (!std::isfinite(c[i]) || !(h[i] >= 0) || !std::isfinite(h[i]))
                throw MalformedRecord("non-finite or negative box entry");
            r.box.center[i] = c[i];
            r.box.half[i] = h[i];
        }
        r.reason = reason_from_string(j.at("reason").get<std::string>());
        if (j.contains("L_center")) r.L_center = j["L_center"].get<double>();
        if (j.contains("err")) r.err = j["err"].get<double>();
        r.depth = j.at("depth").get<int>();
        if (r.depth < 0) throw MalformedRecord("negative depth");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedRecord(e.what());
    }
}

void write_certificate(std::ostream& os, const std::vector<CertificateRecord>& records) {
    for (const auto& r : records) os << to_json_line(r) << '\n';
}

std::vector<CertificateRecord> read_certificate(std::istream& is) {
    std::vector<CertificateRecord> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        out.push_back(parse_json_line(line));
    }
    return out;
}

namespace {

void check_claim(const CertificateRecord& r, std::size_t id, double L0) {
    switch (r.reason) {
    case Reason::Unobtainable:
        if (!is_unobtainable(r.box)) throw ClaimMismatch(id, "box is not unobtainable");
        return;
    case Reason::InTargetBox:
        if (!in_target_box(r.box)) throw ClaimMismatch(id, "box is not inside P0");
        return;
    case Reason::BoundProved: {
        if (!r.L_center || !r.err) throw MalformedRecord("BOUND_PROVED without values");
        auto ev = evaluate(r.box);
        if (!ev) throw ClaimMismatch(id, "L(c) or Err cannot be evaluated");
        if (ev->L_center != *r.L_center) throw ClaimMismatch(id, "L_center differs on recomputation");
        if (ev->err != *r.err) throw ClaimMismatch(id, "err differs on recomputation");
        if (!proves(*r.L_center, *r.err, L0)) throw ClaimMismatch(id, "L_center - err < L0");
        return;
    }
    case Reason::Subdivided:
    case Reason::BudgetExhausted:
        // No arithmetic claim, but recorded values must still be reproducible.
        if (r.L_center || r.err) {
            auto ev = evaluate(r.box);
            if (!ev || (r.L_center && ev->L_center != *r.L_center) || (r.err && ev->err != *r.err))
                throw ClaimMismatch(id, "recorded values differ on recomputation");
        }
        return;
    }
}

// Each coordinate of the two children per axis must cover the parent.
bool children_cover(const ParamBox& parent, const std::vector<ParamBox>& kids) {
    for (int i = 0; i < 6; ++i) {
        Interval p = parent.coord(i);
        Interval lo = kids.front().coord(i), hi = kids.back().coord(i);
        if (lo.lo() > p.lo() || hi.hi() < p.hi() || lo.hi() < hi.lo()) return false;
    }
    return true;
}

} // namespace

ReplayResult replay_certificate(const std::vector<CertificateRecord>& records, double L0) {
    ReplayResult out;
    out.records = records.size();
    try {
        if (records.empty()) throw MalformedRecord("empty certificate");
        std::map<std::pair<int, BoxKey>, std::vector<std::size_t>> index;
        std::size_t root = records.size();
        for (std::size_t i = 0; i < records.size(); ++i) {
            index[{records[i].depth, key_of(records[i].box)}].push_back(i);
            if (records[i].depth == 0) {
                if (root != records.size()) {
                    out.failure = "PartitionFailure";
                    out.detail = "more than one root record";
                    return out;
                }
                root = i;
            }
        }
        if (root == records.size()) {
            out.failure = "PartitionFailure";
            out.detail = "no root record";
            return out;
        }

        std::vector<char> used(records.size(), 0);
        used[root] = 1;
        long double leaf_volume = 0;
        for (std::size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            check_claim(r, i, L0);
            if (r.reason != Reason::Subdivided) {
                ++out.leaves;
                if (r.reason == Reason::BudgetExhausted) ++out.exhausted;
                leaf_volume += volume(r.box);
                continue;
            }
            auto kids = subdivide(r.box);
            if (!children_cover(r.box, kids)) {
                out.failure = "PartitionFailure";
                out.detail = "children of record " + std::to_string(i) + " do not cover it";
                return out;
            }
            for (const auto& k : kids) {
                auto it = index.find({r.depth + 1, key_of(k)});
                std::size_t hit = records.size();
                if (it != index.end())
                    for (std::size_t j : it->second)
                        if (!used[j]) {
                            hit = j;
                            break;
                        }
                if (hit == records.size()) {
                    out.failure = "PartitionFailure";
                    out.detail = "record " + std::to_string(i) + " is missing a child";
                    return out;
                }
                used[hit] = 1;
            }
        }
        for (std::size_t i = 0; i < records.size(); ++i)
            if (!used[i]) {
                out.failure = "PartitionFailure";
                out.detail = "record " + std::to_string(i) + " has no parent";
                return out;
            }
        long double root_volume = volume(records[root].box);
        if (std::fabs(leaf_volume - root_volume) > 1e-9L * root_volume) {
            out.failure = "PartitionFailure";
            out.detail = "leaf volume does not match the root";
            return out;
        }
        out.ok = true;
    } catch (const ClaimMismatch& e) {
        out.failure = "ClaimMismatch";
        out.detail = e.what();
    } catch (const MalformedRecord& e) {
        out.failure = "MalformedRecord";
        out.detail = e.what();
    }
    return out;
}

FalsifyReport falsify(std::size_t samples, std::uint64_t seed, double L0) {
    FalsifyReport rep;
    rep.seed = seed;
    rep.L0 = L0;
    rep.min_upper = INFINITY;
    ParamBox P = parameter_space();
    ParamBox target = target_box();
    std::mt19937_64 rng(seed);
    std::array<std::uniform_real_distribution<double>, 6> dist;
    for (int i = 0; i < 6; ++i)
        dist[i] = std::uniform_real_distribution<double>(P.center[i] - P.half[i],
                                                         P.center[i] + P.half[i]);
    auto in_p0 = [&](const std::array<double, 6>& q) {
        for (int i = 0; i < 3; ++i)
            if (std::fabs(q[i] - target.center[i]) > target.half[i]) return false;
        return true;
    };
    while (rep.samples < samples) {
        std::array<double, 6> q;
        for (int i = 0; i < 6; ++i) q[i] = dist[i](rng);
        ConfigPoint p = ConfigPoint::at(q);
        if (q[0] * q[0] + q[1] * q[1] < 4.0 || in_p0(q) || !in_parameter_space(p)) continue;
        ++rep.samples;
        double u = total_length_L(p, ChainPolicy::Extended).hi();
        if (u < rep.min_upper) {
            rep.min_upper = u;
            rep.argmin = q;
        }
        if (u < L0 - 1e-7) rep.violations.push_back(q);
    }
    return rep;
}

ReplayResult replay_certificate(std::istream& is, double L0) {
    std::vector<CertificateRecord> records;
    try {
        records = read_certificate(is);
    } catch (const MalformedRecord& e) {
        ReplayResult out;
        out.failure = "MalformedRecord";
        out.detail = e.what();
        return out;
    }
    return replay_certificate(records, L0);
}

} // namespace mdm
