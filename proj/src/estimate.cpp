#include "periloss/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

namespace periloss {

namespace {

struct CsvRow {
    long line = 0;
    std::vector<std::string> fields;
};

// RFC 4180: quoted fields may contain commas, doubled quotes and newlines.
std::vector<CsvRow> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::vector<CsvRow> rows;
    CsvRow row;
    row.line = 1;
    std::string field;
    bool quoted = false;
    bool any = false;
    long line = 1;
    char ch;
    auto end_field = [&] {
        row.fields.push_back(field);
        field.clear();
        any = true;
    };
    auto end_row = [&] {
        if (any || !row.fields.empty()) {
            end_field();
            rows.push_back(row);
        }
        row = CsvRow{};
        row.line = line;
        any = false;
        field.clear();
    };
    while (in.get(ch)) {
        if (quoted) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get(ch);
                } else {
                    quoted = false;
                }
            } else {
                if (ch == '\n') ++line;
                field.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            end_field();
        } else if (ch == '\n') {
            ++line;
            end_row();
        } else if (ch != '\r') {
            field.push_back(ch);
            any = true;
        }
    }
    if (!field.empty() || any || !row.fields.empty()) end_row();
    return rows;
}

bool parse_i64(const std::string& s, std::int64_t& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stoll(s, &pos);
    } catch (...) {
        return false;
    }
    return pos == s.size();
}

bool parse_f64(const std::string& s, double& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stod(s, &pos);
    } catch (...) {
        return false;
    }
    return pos == s.size();
}

constexpr double kSecondsPerHour = 3600.0;

}  // namespace

std::int64_t parse_iso8601(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d", &y, &mo, &d, &h, &mi, &s) != 6) {
        throw DataError("bad ISO-8601 timestamp: " + text);
    }
    std::tm tm{};
    tm.tm_year = y - 1900;
    tm.tm_mon = mo - 1;
    tm.tm_mday = d;
    tm.tm_hour = h;
    tm.tm_min = mi;
    tm.tm_sec = s;
    return static_cast<std::int64_t>(timegm(&tm));
}

IngestResult ingest_tickets(const std::string& path) {
    const auto rows = read_csv(path);
    if (rows.empty()) throw DataError("empty ticket file: " + path);
    const std::vector<std::string> header = {"anomaly_id", "cell_id", "start_ts", "end_ts"};
    if (rows[0].fields != header) {
        throw DataError("tickets.csv: expected header anomaly_id,cell_id,start_ts,end_ts");
    }
    IngestResult result;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const CsvRow& row = rows[i];
        if (row.fields.size() != 4) {
            result.malformed.emplace_back(row.line, "expected 4 fields");
            continue;
        }
        TicketRecord rec;
        rec.anomaly_id = row.fields[0];
        rec.cell_id = row.fields[1];
        if (rec.anomaly_id.empty() || rec.cell_id.empty()) {
            result.malformed.emplace_back(row.line, "empty id field");
            continue;
        }
        if (!parse_i64(row.fields[2], rec.start)) {
            result.malformed.emplace_back(row.line, "unparseable start_ts");
            continue;
        }
        if (!row.fields[3].empty()) {
            std::int64_t end = 0;
            if (!parse_i64(row.fields[3], end)) {
                result.malformed.emplace_back(row.line, "unparseable end_ts");
                continue;
            }
            if (end < rec.start) {
                result.malformed.emplace_back(row.line, "end_ts precedes start_ts");
                continue;
            }
            rec.end = end;
        } else {
            ++result.unresolved;
        }
        result.tickets.push_back(std::move(rec));
    }
    const std::size_t total = rows.size() - 1;
    if (total > 0 && result.malformed.size() * 10 > total) {
        std::ostringstream msg;
        msg << "tickets.csv: " << result.malformed.size() << " of " << total
            << " rows malformed (first bad line " << result.malformed.front().first << ": "
            << result.malformed.front().second << ")";
        throw DataError(msg.str());
    }

    // collapse overlapping resolved tickets per cell into downtime intervals
    std::map<std::string, std::vector<const TicketRecord*>> by_cell;
    for (const TicketRecord& t : result.tickets) {
        if (t.end) by_cell[t.cell_id].push_back(&t);
    }
    for (auto& [cell, list] : by_cell) {
        std::sort(list.begin(), list.end(),
                  [](const TicketRecord* a, const TicketRecord* b) { return a->start < b->start; });
        DowntimeInterval cur;
        bool open = false;
        for (const TicketRecord* t : list) {
            if (!open) {
                cur = DowntimeInterval{cell, t->start, *t->end, 1};
                open = true;
            } else if (t->start <= cur.end) {
                cur.end = std::max(cur.end, *t->end);
                ++cur.merged_tickets;
            } else {
                result.downtime.push_back(cur);
                cur = DowntimeInterval{cell, t->start, *t->end, 1};
            }
        }
        if (open) result.downtime.push_back(cur);
    }
    return result;
}

std::vector<KpiRecord> ingest_kpi(const std::string& path) {
    const auto rows = read_csv(path);
    if (rows.empty()) throw DataError("empty KPI file: " + path);
    const std::vector<std::string> header = {"cell_id", "timestamp", "traffic_gb"};
    if (rows[0].fields != header) {
        throw DataError("kpi.csv: expected header cell_id,timestamp,traffic_gb");
    }
    std::vector<KpiRecord> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const CsvRow& row = rows[i];
        if (row.fields.size() != 3) {
            throw DataError("kpi.csv line " + std::to_string(row.line) + ": expected 3 fields");
        }
        KpiRecord rec;
        rec.cell_id = row.fields[0];
        rec.timestamp = parse_iso8601(row.fields[1]);
        if (!parse_f64(row.fields[2], rec.traffic_gb) || rec.traffic_gb < 0.0) {
            throw DataError("kpi.csv line " + std::to_string(row.line) + ": bad traffic value");
        }
        out.push_back(std::move(rec));
    }
    return out;
}

FitReport fit_interarrival(const std::vector<TicketRecord>& tickets, int n_cells) {
    if (n_cells < 1) throw std::invalid_argument("fit_interarrival: n_cells must be >= 1");
    std::vector<double> starts;
    starts.reserve(tickets.size());
    for (const TicketRecord& t : tickets) starts.push_back(t.start / kSecondsPerHour);
    std::sort(starts.begin(), starts.end());
    if (starts.size() < 31) throw DataError("fit_interarrival: need at least 30 inter-arrival gaps");
    std::vector<double> gaps(starts.size() - 1);
    double sum = 0.0;
    for (std::size_t i = 1; i < starts.size(); ++i) {
        gaps[i - 1] = starts[i] - starts[i - 1];
        sum += gaps[i - 1];
    }
    if (sum <= 0.0) throw DataError("fit_interarrival: degenerate arrival times");
    FitReport report;
    report.n_samples = static_cast<long>(gaps.size());
    report.lambda_hat = static_cast<double>(gaps.size()) / sum;
    report.n_cells = n_cells;
    report.per_cell_lambda = report.lambda_hat / n_cells;
    std::sort(gaps.begin(), gaps.end());
    const double n = static_cast<double>(gaps.size());
    double d = 0.0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        const double f = 1.0 - std::exp(-report.lambda_hat * gaps[i]);
        d = std::max(d, std::max((i + 1) / n - f, f - i / n));
    }
    report.ks_statistic = d;
    report.ks_threshold_05 = 1.358 / std::sqrt(n);
    return report;
}

MaintenanceStats maintenance_stats(const std::vector<TicketRecord>& tickets, int hist_bins) {
    MaintenanceStats stats;
    std::vector<double> durations;
    for (const TicketRecord& t : tickets) {
        if (!t.end) {
            ++stats.unresolved;
            continue;
        }
        durations.push_back((*t.end - t.start) / kSecondsPerHour);
    }
    if (durations.empty()) throw DataError("maintenance_stats: no resolved tickets");
    double sum = 0.0, sum2 = 0.0, hi = 0.0;
    for (double y : durations) {
        sum += y;
        sum2 += y * y;
        hi = std::max(hi, y);
    }
    stats.n = static_cast<long>(durations.size());
    stats.mean_y = sum / stats.n;
    stats.e_y2 = sum2 / stats.n;
    if (hi <= 0.0) hi = 1.0;
    const double width = hi / hist_bins;
    stats.hist_edges.resize(hist_bins + 1);
    stats.hist_counts.assign(hist_bins, 0);
    for (int b = 0; b <= hist_bins; ++b) stats.hist_edges[b] = b * width;
    for (double y : durations) {
        int b = std::min(hist_bins - 1, static_cast<int>(y / width));
        ++stats.hist_counts[b];
    }
    return stats;
}

WeeklyProfileResult weekly_profile(const std::vector<KpiRecord>& kpi, ProfileFold fold) {
    const int slots = fold == ProfileFold::weekly ? 168 : 24;
    if (kpi.empty()) throw DataError("weekly_profile: no KPI records");
    std::int64_t lo = kpi.front().timestamp, hi = kpi.front().timestamp;
    for (const KpiRecord& r : kpi) {
        lo = std::min(lo, r.timestamp);
        hi = std::max(hi, r.timestamp);
    }
    if (hi - lo < 2L * slots * 3600L - 3600L) {
        throw DataError("weekly_profile: need at least two full periods of data");
    }
    std::vector<double> sums(slots, 0.0);
    std::vector<long> counts(slots, 0);
    for (const KpiRecord& r : kpi) {
        const int slot = static_cast<int>((r.timestamp / 3600) % slots);
        sums[slot] += r.traffic_gb;
        ++counts[slot];
    }
    WeeklyProfileResult result{PeriodicProfile::sinusoid(0.0, 1.0, 1.0), 0.0, {}};
    std::vector<double> means(slots, 0.0);
    for (int s = 0; s < slots; ++s) {
        if (counts[s] > 0) means[s] = sums[s] / counts[s];
    }
    // impute empty slots from the nearest filled neighbors (circular)
    for (int s = 0; s < slots; ++s) {
        if (counts[s] > 0) continue;
        int left = s, right = s, dl = 0, dr = 0;
        while (counts[(left + slots - 1) % slots] == 0 && dl < slots) {
            left = (left + slots - 1) % slots;
            ++dl;
        }
        while (counts[(right + 1) % slots] == 0 && dr < slots) {
            right = (right + 1) % slots;
            ++dr;
        }
        left = (left + slots - 1) % slots;
        right = (right + 1) % slots;
        if (counts[left] == 0 || counts[right] == 0) {
            throw DataError("weekly_profile: no filled slots to impute from");
        }
        means[s] = 0.5 * (means[left] + means[right]);
        result.imputed_slots.push_back(s);
    }
    double total = 0.0;
    for (double m : means) total += m;
    result.u_bar = total / slots;
    result.profile = PeriodicProfile::sampled(means, static_cast<double>(slots));
    return result;
}

std::vector<DeltaPoint> rolling_delta(const IngestResult& data, double window_h, double step_h) {
    if (window_h <= 0.0 || step_h <= 0.0) {
        throw std::invalid_argument("rolling_delta: window and step must be > 0");
    }
    if (data.downtime.empty()) throw DataError("rolling_delta: no downtime intervals");
    // per-cell cycles: up time from previous resolution to next anomaly,
    // down time from the merged interval itself
    std::map<std::string, std::vector<const DowntimeInterval*>> by_cell;
    std::int64_t t0 = data.downtime.front().start;
    for (const DowntimeInterval& d : data.downtime) {
        by_cell[d.cell_id].push_back(&d);
        t0 = std::min(t0, d.start);
    }
    struct CycleSample {
        double at_h;
        double x_h;
        double y_h;
    };
    std::vector<CycleSample> cycles;
    for (auto& [cell, list] : by_cell) {
        std::sort(list.begin(), list.end(), [](const DowntimeInterval* a, const DowntimeInterval* b) {
            return a->start < b->start;
        });
        for (std::size_t i = 1; i < list.size(); ++i) {
            CycleSample c;
            c.at_h = (list[i]->start - t0) / kSecondsPerHour;
            c.x_h = (list[i]->start - list[i - 1]->end) / kSecondsPerHour;
            c.y_h = (list[i]->end - list[i]->start) / kSecondsPerHour;
            cycles.push_back(c);
        }
    }
    if (cycles.empty()) throw DataError("rolling_delta: fewer than two intervals per cell everywhere");
    std::sort(cycles.begin(), cycles.end(),
              [](const CycleSample& a, const CycleSample& b) { return a.at_h < b.at_h; });
    const double span = cycles.back().at_h;
    std::vector<DeltaPoint> out;
    for (double w0 = 0.0; w0 <= span; w0 += step_h) {
        double sx = 0.0, sy = 0.0;
        long n = 0;
        for (const CycleSample& c : cycles) {
            if (c.at_h >= w0 && c.at_h < w0 + window_h) {
                sx += c.x_h;
                sy += c.y_h;
                ++n;
            }
        }
        if (n == 0) continue;  // empty window skipped
        const double mx = sx / n, my = sy / n;
        out.push_back(DeltaPoint{w0, my / (mx + my), n});
    }
    return out;
}

}  // namespace periloss
