#include "mws/io.hpp"

#include <fstream>
#include <sstream>

namespace mws {

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

ParseError at(const std::string& path, int lineno, const std::string& why) {
  return ParseError(path + ":" + std::to_string(lineno) + ": " + why);
}

mpq_class parse_rational(const std::string& tok, const std::string& path, int lineno) {
  mpq_class q;
  if (q.set_str(tok, 10) != 0)
    throw at(path, lineno, "bad rational '" + tok + "'");
  if (q.get_den() == 0) throw at(path, lineno, "zero denominator in '" + tok + "'");
  q.canonicalize();
  return q;
}

Poly<QCtx> parse_poly(const std::string& tok, const QCtx& k, const std::string& path,
                      int lineno) {
  if (tok == "-") return poly_zero(k);
  std::vector<mpq_class> coeffs;
  std::string cur;
  std::stringstream ss(tok);
  while (std::getline(ss, cur, ','))
    coeffs.push_back(parse_rational(cur, path, lineno));
  if (coeffs.empty()) throw at(path, lineno, "empty coefficient list");
  return poly_of(k, std::move(coeffs));
}

}  // namespace

CurveSpec parse_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open curve file '" + path + "'");

  std::vector<long long> coeffs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::stringstream ss(strip_comment(line));
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        coeffs.push_back(v);
      } catch (const std::exception&) {
        throw at(path, lineno, "bad coefficient '" + tok + "'");
      }
    }
  }
  if (coeffs.empty()) throw ParseError(path + ": no coefficients");
  return CurveSpec::from_coeffs(coeffs);
}

GensFile parse_gens_file(const std::string& path, const CurveSpec& curve) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open generators file '" + path + "'");

  QModel m = model_q(curve);
  GensFile out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::stringstream ss(strip_comment(line));
    std::string kind;
    if (!(ss >> kind)) continue;

    bool torsion = false;
    if (kind == "torsion") {
      torsion = true;
      if (!(ss >> kind)) throw at(path, lineno, "dangling 'torsion'");
    }

    Mumford<QCtx> d;
    if (kind == "point") {
      std::string xs, ys;
      if (!(ss >> xs >> ys)) throw at(path, lineno, "point needs x and y");
      mpq_class x = parse_rational(xs, path, lineno);
      mpq_class y = parse_rational(ys, path, lineno);
      try {
        d = albanese(m, x, y);
      } catch (const NotOnCurve&) {
        throw at(path, lineno, "point is not on the curve");
      }
    } else if (kind == "div") {
      std::string us, vs;
      if (!(ss >> us >> vs)) throw at(path, lineno, "div needs u and v lists");
      d = Mumford<QCtx>{parse_poly(us, m.k, path, lineno), parse_poly(vs, m.k, path, lineno)};
    } else {
      throw at(path, lineno, "unknown entry '" + kind + "'");
    }
    std::string extra;
    if (ss >> extra) throw at(path, lineno, "trailing data '" + extra + "'");

    (torsion ? out.torsion_gens : out.free_gens).push_back(std::move(d));
  }
  return out;
}

GeneratorSet load_generator_set(const std::string& path, const CurveSpec& curve) {
  GensFile gf = parse_gens_file(path, curve);
  return make_generator_set(curve, gf.free_gens, gf.torsion_gens);
}

}  // namespace mws
