#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "roguewave/experiment.hpp"

namespace roguewave {

// 17 significant digits, enough to round-trip any double.
std::string format_number(double v);

// Shortest round-trip form, used in file names: 0.25 -> "0.25".
std::string rho_label(double rho);

// Exclusive lock on an output directory, released on destruction.
class OutputLock {
 public:
  explicit OutputLock(const std::filesystem::path& dir);
  ~OutputLock();
  OutputLock(const OutputLock&) = delete;
  OutputLock& operator=(const OutputLock&) = delete;

 private:
  std::filesystem::path path_;
};

// Writes files into a directory and deletes them again unless commit() is
// called, so a failed command leaves no partial bundle behind.
class BundleWriter {
 public:
  explicit BundleWriter(std::filesystem::path dir);
  ~BundleWriter();
  BundleWriter(const BundleWriter&) = delete;
  BundleWriter& operator=(const BundleWriter&) = delete;

  void write(const std::string& name, const std::string& contents);
  void commit() noexcept { committed_ = true; }

  [[nodiscard]] const std::filesystem::path& directory() const noexcept { return dir_; }
  [[nodiscard]] const std::vector<std::filesystem::path>& files() const noexcept {
    return files_;
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> files_;
  bool committed_ = false;
};

std::string pdf_csv(const Histogram& h);
std::string mean_intensity_csv(const SweepResult& sweep, const RhoResult& r);
std::string eta_table_csv(const SweepResult& sweep);
std::string nbeta_pdf_csv(const SweepResult& sweep);
std::string pdf_plot_script(const SweepResult& sweep);
std::string mean_intensity_plot_script(const SweepResult& sweep);
std::string nbeta_plot_script(const std::vector<NBetaRun>& runs);

// Writes the sweep artifacts plus config.json and manifest.json.
void write_sweep_bundle(BundleWriter& out, const SweepResult& sweep,
                        const std::vector<std::string>& invocation);
void write_nbeta_bundle(BundleWriter& out, const std::vector<NBetaRun>& runs,
                        const std::vector<std::string>& invocation);

}  // namespace roguewave
