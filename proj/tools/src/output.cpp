#include "dpgcli/output.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace dpgcli {

namespace {

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(16) << v;
  return s.str();
}

std::string rate(const std::optional<double>& r) { return r ? num(*r) : std::string(); }

std::string short_rate(const std::optional<double>& r) {
  if (!r) return "-";
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << *r;
  return s.str();
}

} // namespace

void write_error_csv(std::ostream& out, const std::vector<dpg::ErrorReport>& reports) {
  out << "level,h_max,k,n_field,n_trace,err_L2,err_H1_semi,err_trace_dual,eoc_L2,eoc_H1,eoc_trace\n";
  for (const auto& r : reports) {
    out << r.level << ',' << num(r.h_max) << ',' << num(r.k) << ',' << r.n_field << ',' << r.n_trace << ','
        << num(r.err_L2) << ',' << num(r.err_H1_semi) << ',' << num(r.err_trace_dual) << ',' << rate(r.eoc_L2) << ','
        << rate(r.eoc_H1) << ',' << rate(r.eoc_trace) << '\n';
  }
}

void write_identity_csv(std::ostream& out, const std::vector<IdentityRow>& rows) {
  out << "step,max_abs_deviation,max_rel_deviation\n";
  for (const auto& r : rows) out << r.step << ',' << num(r.max_abs_deviation) << ',' << num(r.max_rel_deviation) << '\n';
}

void write_vtk(std::ostream& out, const Snapshot& snap) {
  const auto& mesh = snap.mesh;
  out << "# vtk DataFile Version 3.0\n";
  out << "dpgmarch field t=" << num(snap.time) << "\n";
  out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (std::size_t i = 0; i < mesh.num_vertices(); ++i) {
    out << num(mesh.vertex(i).x()) << ' ' << num(mesh.vertex(i).y()) << " 0\n";
  }
  out << "CELLS " << mesh.num_elements() << ' ' << 4 * mesh.num_elements() << '\n';
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const auto& t = mesh.element(k);
    out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
  out << "CELL_TYPES " << mesh.num_elements() << '\n';
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) out << "5\n";
  out << "POINT_DATA " << mesh.num_vertices() << "\nSCALARS u double 1\nLOOKUP_TABLE default\n";
  for (double v : snap.vertex_values) out << num(v) << '\n';
}

void print_table(std::ostream& out, const std::vector<dpg::ErrorReport>& reports, const std::string& step_label) {
  out << std::left << std::setw(6) << "level" << std::setw(12) << step_label << std::setw(10) << "n_trial"
      << std::setw(13) << "err_L2" << std::setw(8) << "eoc" << std::setw(13) << "err_H1" << std::setw(8) << "eoc"
      << std::setw(13) << "err_trace" << "eoc\n";
  for (const auto& r : reports) {
    out << std::left << std::setw(6) << r.level << std::setw(12) << std::setprecision(4)
        << (step_label == "k" ? r.k : r.h_max) << std::setw(10) << r.n_field + r.n_trace << std::scientific
        << std::setprecision(4) << std::setw(13) << r.err_L2 << std::setw(8) << short_rate(r.eoc_L2) << std::setw(13)
        << r.err_H1_semi << std::setw(8) << short_rate(r.eoc_H1) << std::setw(13) << r.err_trace_dual
        << short_rate(r.eoc_trace) << std::defaultfloat << '\n';
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << content;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

} // namespace dpgcli
