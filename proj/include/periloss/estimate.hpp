#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "periloss/utility.hpp"

namespace periloss {

/// Raised for unreadable or structurally unusable input data.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One trouble ticket: anomaly start and (when resolved) end, UTC seconds.
struct TicketRecord {
    std::string anomaly_id;
    std::string cell_id;
    std::int64_t start = 0;
    std::optional<std::int64_t> end;  // absent = unresolved
};

/// Hourly traffic KPI sample for one cell.
struct KpiRecord {
    std::string cell_id;
    std::int64_t timestamp = 0;  // UTC seconds, hourly cadence
    double traffic_gb = 0.0;
};

/// A merged per-cell downtime interval (overlapping tickets collapsed).
struct DowntimeInterval {
    std::string cell_id;
    std::int64_t start = 0;
    std::int64_t end = 0;
    int merged_tickets = 1;
};

struct IngestResult {
    std::vector<TicketRecord> tickets;             // validated, raw arrival times
    std::vector<DowntimeInterval> downtime;        // overlap-merged per cell
    std::vector<std::pair<long, std::string>> malformed;  // (line, reason)
    long unresolved = 0;
};

// Parses tickets.csv (header anomaly_id,cell_id,start_ts,end_ts; RFC 4180).
// Malformed rows are reported with line numbers; more than 10% malformed
// aborts with a DataError.
IngestResult ingest_tickets(const std::string& path);

std::vector<KpiRecord> ingest_kpi(const std::string& path);

struct FitReport {
    double lambda_hat = 0.0;  // pooled, per hour
    long n_samples = 0;
    double ks_statistic = 0.0;
    double ks_threshold_05 = 0.0;  // 1.358 / sqrt(n)
    double per_cell_lambda = 0.0;
    int n_cells = 0;
};

// Pools arrival times network-wide, fits lambda = 1 / mean gap and reports a
// one-sample Kolmogorov-Smirnov statistic against Exp(lambda_hat). Needs at
// least 30 gaps.
FitReport fit_interarrival(const std::vector<TicketRecord>& tickets, int n_cells);

struct MaintenanceStats {
    double mean_y = 0.0;  // hours
    double e_y2 = 0.0;
    long n = 0;
    long unresolved = 0;
    std::vector<double> hist_edges;  // hours
    std::vector<long> hist_counts;
};

MaintenanceStats maintenance_stats(const std::vector<TicketRecord>& tickets, int hist_bins = 50);

struct WeeklyProfileResult {
    PeriodicProfile profile;
    double u_bar = 0.0;
    std::vector<int> imputed_slots;
};

enum class ProfileFold { weekly, daily };  // 168 or 24 hourly slots

// Per-slot mean across periods; requires at least two full periods of
// coverage. Missing slots are linearly imputed from their neighbors.
WeeklyProfileResult weekly_profile(const std::vector<KpiRecord>& kpi, ProfileFold fold);

struct DeltaPoint {
    double window_start_h = 0.0;  // hours since the first ticket
    double delta = 0.0;
    long n_cycles = 0;
};

// Rolling 1 - availability over sliding windows; empty windows are skipped.
// window and step in hours.
std::vector<DeltaPoint> rolling_delta(const IngestResult& data, double window_h, double step_h);

// ISO-8601 "YYYY-MM-DDTHH:MM:SS[Z]" -> UTC seconds.
std::int64_t parse_iso8601(const std::string& text);

}  // namespace periloss
