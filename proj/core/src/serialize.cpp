#include "decoh/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace decoh {

namespace {

void write_comments(std::ostream& os, const std::vector<std::string>& comments) {
  for (const auto& c : comments) os << "# " << c << "\n";
}

/// Next line that is neither empty nor a pure comment; returns false at EOF.
bool next_data_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    return true;
  }
  return false;
}

double parse_double(const std::string& tok, const char* what) {
  try {
    size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("serialize: bad number '") + tok + "' in " + what);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double header_value(std::istream& is, const char* key) {
  std::string line;
  if (!next_data_line(is, line) || line.rfind(key, 0) != 0)
    throw std::invalid_argument(std::string("serialize: expected header '") + key + "'");
  return parse_double(line.substr(std::string(key).size()), key);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::stod(buf) == v) break;
  }
  return buf;
}

void write_operator(std::ostream& os, const Operator& op,
                    const std::vector<std::string>& comments) {
  write_comments(os, comments);
  os << "dim=" << op.dim() << " tag=" << to_string(op.tag()) << "\n";
  for (int i = 0; i < op.dim(); ++i) {
    for (int j = 0; j < op.dim(); ++j) {
      if (j) os << ",";
      os << format_double(op.mat()(i, j).real()) << ":" << format_double(op.mat()(i, j).imag());
    }
    os << "\n";
  }
}

Operator read_operator(std::istream& is) {
  std::string line;
  if (!next_data_line(is, line)) throw std::invalid_argument("serialize: empty operator input");
  int dim = 0;
  char tag_buf[32] = {0};
  if (std::sscanf(line.c_str(), "dim=%d tag=%31s", &dim, tag_buf) != 2 || dim < 1)
    throw std::invalid_argument("serialize: malformed operator header '" + line + "'");
  const SpaceTag tag = space_tag_from_string(tag_buf);

  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (!next_data_line(is, line))
      throw std::invalid_argument("serialize: truncated operator matrix");
    const auto cells = split(line, ',');
    if (static_cast<int>(cells.size()) != dim)
      throw std::invalid_argument("serialize: wrong row length in operator matrix");
    for (int j = 0; j < dim; ++j) {
      const auto pair = split(cells[j], ':');
      if (pair.size() != 2)
        throw std::invalid_argument("serialize: matrix entries must be re:im pairs");
      m(i, j) = Complex(parse_double(pair[0], "operator"), parse_double(pair[1], "operator"));
    }
  }
  return Operator(m, tag);
}

void write_spectrum(std::ostream& os, const CouplingSpectrum& spectrum,
                    const std::vector<std::string>& comments) {
  write_comments(os, comments);
  os << "beta=" << format_double(spectrum.beta) << "\n";
  os << "epsilon=" << format_double(spectrum.epsilon()) << "\n";
  os << "hbar=" << format_double(spectrum.hbar) << "\n";
  os << "omega_cutoff=" << format_double(spectrum.omega_cutoff) << "\n";
  for (const auto& t : spectrum.transitions)
    os << t.n << "," << t.nprime << "," << format_double(t.h1x.real()) << ","
       << format_double(t.h1x.imag()) << "," << format_double(t.h1p.real()) << ","
       << format_double(t.h1p.imag()) << "," << format_double(t.omega) << ","
       << format_double(t.weight) << "\n";
}

CouplingSpectrum read_spectrum(std::istream& is) {
  CouplingSpectrum out;
  out.beta = header_value(is, "beta=");
  out.regularization_epsilon = header_value(is, "epsilon=");
  out.hbar = header_value(is, "hbar=");
  out.omega_cutoff = header_value(is, "omega_cutoff=");
  std::string line;
  while (next_data_line(is, line)) {
    const auto cells = split(line, ',');
    if (cells.size() != 8)
      throw std::invalid_argument("serialize: transition rows need 8 fields, got '" + line + "'");
    Transition t;
    t.n = static_cast<int>(parse_double(cells[0], "spectrum"));
    t.nprime = static_cast<int>(parse_double(cells[1], "spectrum"));
    t.h1x = Complex(parse_double(cells[2], "spectrum"), parse_double(cells[3], "spectrum"));
    t.h1p = Complex(parse_double(cells[4], "spectrum"), parse_double(cells[5], "spectrum"));
    t.omega = parse_double(cells[6], "spectrum");
    t.weight = parse_double(cells[7], "spectrum");
    out.transitions.push_back(t);
  }
  out.validate();
  return out;
}

void write_wigner(std::ostream& os, const WignerFunction& w,
                  const std::vector<std::string>& comments) {
  write_comments(os, comments);
  os << "# hbar=" << format_double(w.grid.hbar) << "\n";
  os << "# x p W\n";
  for (int i = 0; i < w.grid.n_x; ++i)
    for (int j = 0; j < w.grid.n_p; ++j)
      os << format_double(w.grid.x(i)) << " " << format_double(w.grid.p(j)) << " "
         << format_double(w.values(i, j)) << "\n";
}

WignerFunction read_wigner(std::istream& is) {
  double hbar = 0.0;
  std::vector<double> xs, ps, ws;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# hbar=", 0) == 0) hbar = parse_double(line.substr(7), "wigner hbar");
      continue;
    }
    std::istringstream row(line);
    double x, p, w;
    if (!(row >> x >> p >> w))
      throw std::invalid_argument("serialize: malformed Wigner row '" + line + "'");
    xs.push_back(x);
    ps.push_back(p);
    ws.push_back(w);
  }
  if (ws.empty()) throw std::invalid_argument("serialize: empty Wigner input");
  if (!(hbar > 0.0)) throw std::invalid_argument("serialize: Wigner input lacks the hbar header");

  size_t n_p = 1;
  while (n_p < xs.size() && xs[n_p] == xs[0]) ++n_p;
  if (xs.size() % n_p != 0)
    throw std::invalid_argument("serialize: Wigner input is not a full row-major grid");
  const size_t n_x = xs.size() / n_p;
  const double dx = n_x > 1 ? xs[n_p] - xs[0] : 1.0;
  const double dp = n_p > 1 ? ps[1] - ps[0] : 1.0;

  WignerFunction w;
  w.grid = PhaseSpaceGrid(xs[0], xs[0] + n_x * dx, ps[0], ps[0] + n_p * dp,
                          static_cast<int>(n_x), static_cast<int>(n_p), hbar);
  w.values = RealField(n_x, n_p);
  for (size_t i = 0; i < n_x; ++i)
    for (size_t j = 0; j < n_p; ++j) w.values(i, j) = ws[i * n_p + j];
  return w;
}

void write_table(std::ostream& os, const std::string& header,
                 const std::vector<std::vector<double>>& rows,
                 const std::vector<std::string>& comments) {
  write_comments(os, comments);
  os << header << "\n";
  for (const auto& row : rows) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) os << ",";
      os << format_double(row[j]);
    }
    os << "\n";
  }
}

}  // namespace decoh
