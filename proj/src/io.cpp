#include "fracext/io.hpp"

#include "fracext/error.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace fracext {

namespace {
std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json& field(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(child(path, key), "missing required field");
  return *it;
}

const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

std::vector<double> numbers(const Json& j, const std::string& path) {
  std::vector<double> out;
  const auto& a = array_at(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(number_at(a[i], child(path, i)));
  return out;
}

template <class Int>
Json int_strings(const std::vector<Int>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(std::to_string(x));
  return a;
}
}  // namespace

Rational rational_at(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number()) return parse_rational(j.dump());
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
  throw SchemaError(path, "expected a rational (\"num/den\" string or number)");
}

double number_at(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(rational_at(j, path));
  throw SchemaError(path, "expected a number");
}

SimilarityIFS ifs_from_json(const Json& j, const std::string& path) {
  const auto& maps = array_at(field(j, path, "maps"), child(path, "maps"));
  const auto& probs = array_at(field(j, path, "probs"), child(path, "probs"));
  std::vector<AffineMap> ms;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const std::string p = child(child(path, "maps"), i);
    ms.push_back({rational_at(field(maps[i], p, "ratio"), child(p, "ratio")),
                  rational_at(field(maps[i], p, "translation"), child(p, "translation"))});
  }
  std::vector<Rational> ps;
  for (std::size_t i = 0; i < probs.size(); ++i) ps.push_back(rational_at(probs[i], child(child(path, "probs"), i)));
  try {
    return SimilarityIFS(std::move(ms), std::move(ps));
  } catch (const InvalidArgument& e) {
    throw SchemaError(path.empty() ? "/" : path, e.what());
  }
}

KnappParams knapp_params_from_json(const Json& j, const std::string& path) {
  KnappParams p;
  p.alphas = numbers(field(j, path, "alphas"), child(path, "alphas"));
  p.betas = numbers(field(j, path, "betas"), child(path, "betas"));
  if (p.alphas.size() != p.betas.size()) throw SchemaError(child(path, "betas"), "length differs from alphas");
  if (j.contains("epsilon")) p.phi.epsilon = number_at(j["epsilon"], child(path, "epsilon"));
  if (j.contains("n_max")) {
    if (!j["n_max"].is_number_integer()) throw SchemaError(child(path, "n_max"), "expected an integer");
    p.n_max = j["n_max"].get<int>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      throw SchemaError(child(path, "seed"), "expected an unsigned integer");
    p.seed = j["seed"].get<std::uint64_t>();
  }
  return p;
}

Json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw SchemaError("/", "cannot open config " + file.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("/", std::string("malformed JSON: ") + e.what());
  }
}

Json ifs_to_json(const SimilarityIFS& ifs) {
  Json maps = Json::array(), probs = Json::array();
  for (const auto& m : ifs.maps()) maps.push_back({{"ratio", to_string(m.ratio)}, {"translation", to_string(m.translation)}});
  for (const auto& p : ifs.probs()) probs.push_back(to_string(p));
  return {{"maps", maps}, {"probs", probs}};
}

Json family_to_json(const KnappFamily& fam) {
  Json j;
  j["construction"] = fam.construction == KnappConstruction::Cantor ? "cantor" : "single_scale";
  j["alphas"] = fam.alphas;
  j["betas"] = fam.betas;
  j["epsilon"] = fam.epsilon;
  j["n0"] = fam.n0;
  j["seed"] = std::to_string(fam.seed);
  j["attempts"] = fam.attempts;
  j["ratio_constant"] = fam.ratio_constant;
  if (fam.construction == KnappConstruction::SingleScale) {
    j["base"] = std::to_string(fam.base);
    j["n0_exponent"] = fam.n0_exponent;
  }
  Json levels = Json::array();
  for (int N = 1; N <= fam.depth(); ++N) {
    const auto& lv = fam.levels[N - 1];
    Json l;
    l["N"] = N;
    l["psi"] = std::to_string(lv.psi);
    l["Psi"] = std::to_string(lv.Psi);
    l["M"] = std::to_string(lv.M);
    l["t"] = int_strings(lv.t);
    l["tau"] = int_strings(lv.tau);
    l["d"] = int_strings(lv.d);
    l["theta"] = lv.theta;
    l["vartheta"] = lv.vartheta;
    Json W = Json::array();
    for (const auto& w : lv.W) W.push_back(int_strings(w));
    l["W"] = W;
    Json E = Json::array(), P = Json::array();
    for (std::size_t m = 0; m < fam.k(); ++m) {
      E.push_back(int_strings(fam.endpoints[N][m]));
      P.push_back(int_strings(fam.progression[N][m]));
    }
    l["endpoints"] = E;
    l["progression"] = P;
    levels.push_back(l);
  }
  j["levels"] = levels;
  return j;
}

Json identity_to_json(const IdentityReport& r) {
  return {{"lhs", r.lhs}, {"rhs", r.rhs}, {"rel_error", r.rel_error}, {"R", r.R}, {"step", r.step}};
}

Json theorem31_to_json(const Theorem31Report& r) {
  Json p0 = r.p0.kind == ExtendedExponent::Kind::Finite     ? Json(r.p0.value)
            : r.p0.kind == ExtendedExponent::Kind::Infinite ? Json("inf")
                                                             : Json("undefined");
  return {{"p", r.p},
          {"q", r.q},
          {"hypothesis", {{"p0", p0}, {"cells", r.cells}, {"norms", r.norms}, {"holds", r.hypothesis_holds}}},
          {"trials", {{"max_ratio_by_level", r.max_ratio_by_level}, {"ratio_growth", r.ratio_growth}}},
          {"verdict", r.verdict}};
}

Json manifest(const std::string& command, const Json& params, std::uint64_t seed) {
  return {{"command", command}, {"params", params}, {"seed", std::to_string(seed)}, {"version", kVersion}};
}

namespace {
std::ostringstream csv_stream() {
  std::ostringstream os;
  os << std::setprecision(17);
  return os;
}
}  // namespace

std::string decay_csv(const DecayFit& fit) {
  auto os = csv_stream();
  os << "xi,abs_fhat,envelope\n";
  for (const auto& s : fit.samples) os << s.xi << ',' << s.abs_fhat << ',' << s.envelope << '\n';
  return os.str();
}

std::string box_counts_csv(std::span<const BoxCount> counts) {
  auto os = csv_stream();
  os << "delta,N_delta\n";
  for (const auto& c : counts) os << to_string(c.delta) << ',' << c.count << '\n';
  return os.str();
}

std::string transform_csv(std::span<const double> xis, std::span<const std::complex<double>> values) {
  auto os = csv_stream();
  os << "xi,re,im,abs\n";
  for (std::size_t i = 0; i < xis.size() && i < values.size(); ++i)
    os << xis[i] << ',' << values[i].real() << ',' << values[i].imag() << ',' << std::abs(values[i]) << '\n';
  return os.str();
}

std::string histogram_csv(const SumHistogram& h) {
  std::ostringstream os;
  os << "z,g\n";
  for (const auto& [z, g] : h.entries) os << z << ',' << to_string(g) << '\n';
  return os.str();
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  out << text;
}

}  // namespace fracext
