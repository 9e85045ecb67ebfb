#include "roguewave/output.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "roguewave/cli.hpp"
#include "roguewave/errors.hpp"
#include "roguewave/field.hpp"

namespace roguewave {

namespace fs = std::filesystem;

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return {buf, res.ptr};
}

std::string rho_label(double rho) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, rho);
  return {buf, res.ptr};
}

OutputLock::OutputLock(const fs::path& dir) : path_(dir / ".roguewave.lock") {
  std::FILE* f = std::fopen(path_.c_str(), "wx");
  if (f == nullptr) {
    throw IoError("output directory is locked or not writable: " + dir.string());
  }
  std::fclose(f);
}

OutputLock::~OutputLock() {
  std::error_code ec;
  fs::remove(path_, ec);
}

BundleWriter::BundleWriter(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) {
    throw IoError("cannot create output directory " + dir_.string());
  }
}

BundleWriter::~BundleWriter() {
  if (committed_) return;
  for (const auto& f : files_) {
    std::error_code ec;
    fs::remove(f, ec);
  }
}

void BundleWriter::write(const std::string& name, const std::string& contents) {
  const fs::path path = dir_ / name;
  files_.push_back(path);
  std::ofstream os{path, std::ios::binary | std::ios::trunc};
  os << contents;
  os.close();
  if (!os) {
    throw IoError("failed writing " + path.string());
  }
}

std::string pdf_csv(const Histogram& h) {
  std::ostringstream os;
  os << "bin_lo,bin_hi,count,density\n";
  const auto& edges = h.bin_edges();
  for (std::size_t i = 0; i < h.size(); ++i) {
    os << format_number(edges[i]) << ',' << format_number(edges[i + 1]) << ','
       << h.counts()[i] << ',' << format_number(h.density(i)) << '\n';
  }
  return os.str();
}

std::string mean_intensity_csv(const SweepResult& sweep, const RhoResult& r) {
  const auto& cfg = sweep.config;
  const auto coeffs = fourier_coeffs(cfg.dist);
  const auto mean = r.mean_curve();
  const auto se = r.stderr_curve();
  std::ostringstream os;
  os << "beta,mean,stderr,analytic_independent\n";
  for (std::size_t k = 0; k < sweep.grid.size(); ++k) {
    const double beta = sweep.grid.values[k];
    os << format_number(beta) << ',' << format_number(mean[k]) << ',' << format_number(se[k])
       << ','
       << format_number(expected_intensity(beta, cfg.n_waves, coeffs.a, coeffs.b, cfg.e0))
       << '\n';
  }
  return os.str();
}

std::string eta_table_csv(const SweepResult& sweep) {
  std::ostringstream os;
  os << "rho,eta,eta_base,i_max,mean,sigma\n";
  for (const auto& r : sweep.rhos) {
    const auto& m = r.metrics;
    os << format_number(m.rho) << ',' << format_number(m.eta) << ','
       << (m.eta_base ? format_number(*m.eta_base) : std::string{}) << ','
       << format_number(m.i_max) << ',' << format_number(m.mean) << ','
       << format_number(m.sigma) << '\n';
  }
  return os.str();
}

std::string nbeta_pdf_csv(const SweepResult& sweep) {
  std::ostringstream os;
  os << "rho,bin_lo,bin_hi,count,density\n";
  for (const auto& r : sweep.rhos) {
    const auto& h = r.histogram;
    const auto& edges = h.bin_edges();
    for (std::size_t i = 0; i < h.size(); ++i) {
      os << format_number(r.rho) << ',' << format_number(edges[i]) << ','
         << format_number(edges[i + 1]) << ',' << h.counts()[i] << ','
         << format_number(h.density(i)) << '\n';
    }
  }
  return os.str();
}

namespace {

constexpr const char* kGnuplotPreamble =
    "set datafile separator ','\n"
    "set key top right\n";

std::string pdf_name(double rho) { return "pdf_rho_" + rho_label(rho) + ".csv"; }
std::string mean_name(double rho) { return "mean_intensity_" + rho_label(rho) + ".csv"; }

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json manifest(const ExperimentConfig& cfg, const std::vector<std::string>& invocation,
                        const std::vector<fs::path>& files) {
  nlohmann::json m;
  m["version"] = version_string();
  m["timestamp"] = timestamp_utc();
  m["seed"] = cfg.master_seed;
  m["invocation"] = invocation;
  m["config"] = config_to_json(cfg);
  auto& names = m["files"] = nlohmann::json::array();
  for (const auto& f : files) names.push_back(f.filename().string());
  return m;
}

nlohmann::json histogram_summary(const SweepResult& sweep) {
  auto out = nlohmann::json::array();
  for (const auto& r : sweep.rhos) {
    out.push_back({{"rho", r.rho},
                   {"n_beta", sweep.config.n_beta},
                   {"total", r.histogram.total()},
                   {"underflow", r.histogram.underflow()},
                   {"overflow", r.histogram.overflow()},
                   {"normalization", r.pooled.mean()}});
  }
  return out;
}

}  // namespace

std::string pdf_plot_script(const SweepResult& sweep) {
  std::ostringstream os;
  os << kGnuplotPreamble << "set logscale y\n"
     << "set xlabel 'I / <I>'\nset ylabel 'PDF'\n"
     << "plot ";
  for (std::size_t i = 0; i < sweep.rhos.size(); ++i) {
    const double rho = sweep.rhos[i].rho;
    if (i != 0) os << ", \\\n     ";
    os << "'" << pdf_name(rho) << "' every ::1 using (($1+$2)/2):($4 > 0 ? $4 : NaN)"
       << " with linespoints title 'rho = " << rho_label(rho) << "'";
  }
  os << "\npause mouse close\n";
  return os.str();
}

std::string mean_intensity_plot_script(const SweepResult& sweep) {
  std::ostringstream os;
  os << kGnuplotPreamble << "set xlabel 'beta'\nset ylabel '<I>'\nset xrange [0:2*pi]\n"
     << "plot ";
  for (std::size_t i = 0; i < sweep.rhos.size(); ++i) {
    const double rho = sweep.rhos[i].rho;
    if (i != 0) os << ", \\\n     ";
    os << "'" << mean_name(rho) << "' every ::1 using 1:2:3 with yerrorlines title 'rho = "
       << rho_label(rho) << "'";
    if (rho == 0.0) {
      os << ", \\\n     '" << mean_name(rho)
         << "' every ::1 using 1:4 with lines dashtype 2 title 'analytic, independent phases'";
    }
  }
  os << "\npause mouse close\n";
  return os.str();
}

std::string nbeta_plot_script(const std::vector<NBetaRun>& runs) {
  std::ostringstream os;
  os << kGnuplotPreamble << "set logscale y\n"
     << "set xlabel 'I / <I>'\nset ylabel 'PDF'\n"
     << "plot ";
  bool first = true;
  for (const auto& run : runs) {
    for (const auto& r : run.sweep.rhos) {
      if (!first) os << ", \\\n     ";
      first = false;
      os << "'nbeta_pdf_" << run.n_beta << ".csv' every ::1 using "
         << "($1 == " << rho_label(r.rho) << " ? ($2+$3)/2 : NaN):($5 > 0 ? $5 : NaN)"
         << " with linespoints title 'N_beta = " << run.n_beta << ", rho = "
         << rho_label(r.rho) << "'";
    }
  }
  os << "\npause mouse close\n";
  return os.str();
}

void write_sweep_bundle(BundleWriter& out, const SweepResult& sweep,
                        const std::vector<std::string>& invocation) {
  out.write("config.json", config_to_json(sweep.config).dump(2) + "\n");
  for (const auto& r : sweep.rhos) {
    out.write(pdf_name(r.rho), pdf_csv(r.histogram));
    out.write(mean_name(r.rho), mean_intensity_csv(sweep, r));
  }
  out.write("eta_table.csv", eta_table_csv(sweep));
  out.write("plot_pdf.gp", pdf_plot_script(sweep));
  out.write("plot_mean_intensity.gp", mean_intensity_plot_script(sweep));
  auto m = manifest(sweep.config, invocation, out.files());
  m["histograms"] = histogram_summary(sweep);
  out.write("manifest.json", m.dump(2) + "\n");
}

void write_nbeta_bundle(BundleWriter& out, const std::vector<NBetaRun>& runs,
                        const std::vector<std::string>& invocation) {
  if (runs.empty()) {
    throw ArgumentError("write_nbeta_bundle: no runs");
  }
  out.write("config.json", config_to_json(runs.front().sweep.config).dump(2) + "\n");
  auto summaries = nlohmann::json::array();
  for (const auto& run : runs) {
    out.write("nbeta_pdf_" + std::to_string(run.n_beta) + ".csv", nbeta_pdf_csv(run.sweep));
    for (auto& s : histogram_summary(run.sweep)) summaries.push_back(s);
  }
  out.write("plot_nbeta.gp", nbeta_plot_script(runs));
  auto m = manifest(runs.front().sweep.config, invocation, out.files());
  m["histograms"] = summaries;
  out.write("manifest.json", m.dump(2) + "\n");
}

}  // namespace roguewave
