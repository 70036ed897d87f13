#pragma once

#include <ostream>
#include <string>

#include "dpgcli/study.hpp"

namespace dpgcli {

/// ErrorReport columns in declared order, 16 significant digits, empty EOC
/// cells where the rate is undefined.
void write_error_csv(std::ostream& out, const std::vector<dpg::ErrorReport>& reports);

/// step, max_abs_deviation, max_rel_deviation.
void write_identity_csv(std::ostream& out, const std::vector<IdentityRow>& rows);

/// Legacy ASCII VTK unstructured grid with point data "u".
void write_vtk(std::ostream& out, const Snapshot& snapshot);

/// Human-readable EOC table.
void print_table(std::ostream& out, const std::vector<dpg::ErrorReport>& reports, const std::string& step_label);

void write_file(const std::string& path, const std::string& content);

} // namespace dpgcli
