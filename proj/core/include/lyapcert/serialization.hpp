#pragma once

#include <functional>
#include <optional>
#include <string>

#include "lyapcert/dynamics.hpp"
#include "lyapcert/poly.hpp"
#include "lyapcert/sos.hpp"

namespace lyapcert {

// JSON / CSV interchange. All coefficients travel as exact decimal or
// "num/den" strings and round-trip exactly; floating values (Gram entries,
// trajectory samples) are written in shortest round-trip form, so identical
// inputs produce byte-identical files.

std::string polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const std::string& text);

std::string vector_field_to_json(const VectorField& f);
VectorField vector_field_from_json(const std::string& text);

std::string certificate_to_json(const GramCertificate& cert, double feas_tol, double recon_tol);
GramCertificate certificate_from_json(const std::string& text);

// t, x1..xn, plus an optional tracked scalar column.
std::string trajectory_to_csv(const Trajectory& traj,
                              const std::function<double(const EvalPoint&)>* tracked = nullptr,
                              const std::string& tracked_name = "V");

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// shortest round-trip decimal form of a double
std::string format_double(double x);

}  // namespace lyapcert
