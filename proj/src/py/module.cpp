#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "periloss/config.hpp"
#include "periloss/estimate.hpp"
#include "periloss/study.hpp"
#include "periloss/version.hpp"

namespace py = pybind11;
using namespace periloss;

namespace {

StudySpec make_single_cell_spec(double lam, double mu, double amplitude, double offset,
                                double period, long n_cycles, double threshold) {
    StudySpec spec;
    spec.interarrival = InterArrivalModel::exponential(lam);
    spec.maintenance = MaintenanceModel::exponential(mu);
    spec.profile = PeriodicProfile::sinusoid(amplitude, offset, period);
    spec.n_cells = 1;
    spec.mode = StudySpec::Mode::by_cycle;
    spec.n_cycles = n_cycles;
    spec.threshold = threshold;
    return spec;
}

}  // namespace

PYBIND11_MODULE(_periloss, m) {
    m.doc() = "network reliability loss under periodic demand";
    m.attr("__version__") = kVersion;

    m.def("loss_limit",
          [](double mean_x, double mean_y, double u_bar, int n_cells) {
              return expected_loss_limit(LimitInputs{mean_x, mean_y, u_bar, n_cells});
          },
          py::arg("mean_x"), py::arg("mean_y"), py::arg("u_bar"), py::arg("n_cells") = 1,
          "long-run expected loss N * E[Y] * U_bar / (E[X] + E[Y])");
    m.def("availability", &availability, py::arg("mtbf"), py::arg("mttr"));
    m.def("delta", &delta, py::arg("mean_x"), py::arg("mean_y"));

    m.def("fourier_bound",
          [](double rate, double period) {
              const FourierBound fb = fourier_bound_exponential(rate, period);
              return py::make_tuple(fb.alpha, fb.constant);
          },
          py::arg("rate"), py::arg("period"),
          "(alpha, C) of the geometric wrapped-density bound for exponential up-times");

    m.def("wrapped_sup_distance",
          [](double rate, double period, int fold, int bins) {
              const WrappedDensity w =
                  self_convolve(wrap_density(exponential_density(rate), period, bins), fold);
              return sup_distance_to_uniform(w);
          },
          py::arg("rate"), py::arg("period"), py::arg("fold") = 1, py::arg("bins") = 4096,
          "sup |f - 1/p| of the fold-cycle wrapped clock density");

    m.def("single_cell_study",
          [](double lam, double mu, double amplitude, double offset, double period,
             long n_cycles, int reps, std::uint64_t seed, int threads, double threshold) {
              const StudySpec spec =
                  make_single_cell_spec(lam, mu, amplitude, offset, period, n_cycles, threshold);
              const ReplicationSummary s = replicate(spec, reps, seed, threads);
              py::dict d;
              d["median"] = s.median;
              d["mean"] = s.mean;
              d["q10"] = s.q10;
              d["q90"] = s.q90;
              d["unreached"] = s.unreached;
              d["limit"] = spec.limit_per_cell();
              return d;
          },
          py::arg("lam"), py::arg("mu"), py::arg("amplitude"), py::arg("offset"),
          py::arg("period") = 24.0, py::arg("n_cycles") = 2000, py::arg("reps") = 10,
          py::arg("seed") = 1, py::arg("threads") = 1, py::arg("threshold") = 0.10,
          "replicated single-cell convergence study; returns stage quantiles (cycles)");

    m.def("fit_tickets",
          [](const std::string& path, int n_cells) {
              const IngestResult data = ingest_tickets(path);
              const FitReport fit = fit_interarrival(data.tickets, n_cells);
              const MaintenanceStats stats = maintenance_stats(data.tickets);
              py::dict d;
              d["lambda_hat"] = fit.lambda_hat;
              d["per_cell_lambda"] = fit.per_cell_lambda;
              d["ks_statistic"] = fit.ks_statistic;
              d["ks_threshold_05"] = fit.ks_threshold_05;
              d["mean_y"] = stats.mean_y;
              d["e_y2"] = stats.e_y2;
              d["n_tickets"] = data.tickets.size();
              d["n_malformed"] = data.malformed.size();
              return d;
          },
          py::arg("path"), py::arg("n_cells") = 1,
          "pooled exponential fit and repair statistics from a tickets.csv file");

    m.def("write_ticket_fixture",
          [](const std::string& path, double lambda_pooled, double mu, int n_cells,
             long n_tickets, std::uint64_t seed) {
              TicketFixtureSpec spec;
              spec.lambda_pooled = lambda_pooled;
              spec.mu = mu;
              spec.n_cells = n_cells;
              spec.n_tickets = n_tickets;
              write_ticket_fixture(path, spec, seed);
          },
          py::arg("path"), py::arg("lambda_pooled") = 12.6, py::arg("mu") = 0.47,
          py::arg("n_cells") = 660, py::arg("n_tickets") = 10000, py::arg("seed") = 1,
          "write a synthetic tickets.csv with pooled Poisson arrivals");

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<DataError>(m, "DataError");
}
