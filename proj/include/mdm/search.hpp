#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mdm/scene.hpp"

namespace mdm {

enum class Reason { Unobtainable, InTargetBox, BoundProved, Subdivided, BudgetExhausted };

const char* to_string(Reason r);
Reason reason_from_string(const std::string& s);  // MalformedRecord on unknown names

struct CertificateRecord {
    ParamBox box;
    Reason reason = Reason::Subdivided;
    std::optional<double> L_center;
    std::optional<double> err;
    int depth = 0;
};

struct SearchConfig {
    double L0 = 0.0;
    int depth_limit = 4;                  // boxes at depth depth_limit - 1 are never split
    std::optional<double> time_budget_s;  // unlimited when empty
    int workers = 1;
    ParamBox root = parameter_space();
};

struct SearchSummary {
    std::array<std::size_t, 5> counts{};  // indexed by Reason
    int max_depth = 0;
    double wall_seconds = 0.0;
    bool success = false;  // no BUDGET_EXHAUSTED leaf

    std::size_t count(Reason r) const { return counts[static_cast<int>(r)]; }
};

struct SearchResult {
    SearchSummary summary;
    std::vector<CertificateRecord> records;  // canonical order
};

// Default threshold: the certified lower end of L(p0).
double default_L0();

// The 2^6 halves of a box; they overlap by an ulp so their union covers it.
std::vector<ParamBox> subdivide(const ParamBox& b);

CertificateRecord process_box(const ParamBox& b, const SearchConfig& cfg, int depth);
SearchResult run_search(const SearchConfig& cfg);

bool canonical_less(const CertificateRecord& a, const CertificateRecord& b);
void sort_canonical(std::vector<CertificateRecord>& records);

std::string to_json_line(const CertificateRecord& r);
CertificateRecord parse_json_line(const std::string& line);  // MalformedRecord
void write_certificate(std::ostream& os, const std::vector<CertificateRecord>& records);
std::vector<CertificateRecord> read_certificate(std::istream& is);

struct ReplayResult {
    bool ok = false;
    std::string failure;  // "MalformedRecord", "ClaimMismatch", "PartitionFailure" or empty
    std::string detail;
    std::size_t records = 0;
    std::size_t leaves = 0;
    std::size_t exhausted = 0;
};

ReplayResult replay_certificate(std::istream& is, double L0);
ReplayResult replay_certificate(const std::vector<CertificateRecord>& records, double L0);

// Seeded uniform sampling of obtainable points of P outside P0, looking for
// L(p).upper < L0 - 1e-7.
struct FalsifyReport {
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double L0 = 0.0;
    double min_upper = 0.0;  // +inf when nothing was sampled
    std::array<double, 6> argmin{};
    std::vector<std::array<double, 6>> violations;
};

FalsifyReport falsify(std::size_t samples, std::uint64_t seed, double L0);

} // namespace mdm
