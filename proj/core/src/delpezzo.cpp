#include "strata/delpezzo.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "strata/errors.hpp"
#include "strata/stability.hpp"

namespace strata {

std::string dp_string(const DPClass& a) {
  std::ostringstream os;
  os << '(' << a.d << ';' << a.n[0] << ',' << a.n[1] << ',' << a.n[2] << ',' << a.n[3] << ')';
  return os.str();
}

DPClass parse_dp_class(const std::string& text) {
  std::vector<long long> v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    long long x = 0;
    try {
      x = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw InputError("bad class coefficient: '" + tok + "'");
    }
    if (used != tok.size()) throw InputError("bad class coefficient: '" + tok + "'");
    v.push_back(x);
  }
  if (v.size() != 5) throw InputError("a class needs five coefficients d,n1,n2,n3,n4");
  return DPClass{v[0], {v[1], v[2], v[3], v[4]}};
}

long long dp_pairing(const DPClass& a, const DPClass& b) {
  long long s = checked::mul(a.d, b.d);
  for (std::size_t i = 0; i < 4; ++i) s = checked::sub(s, checked::mul(a.n[i], b.n[i]));
  return s;
}

std::vector<DPClass> dp_minus_one_curves() {
  std::vector<DPClass> out;
  for (std::size_t i = 0; i < 4; ++i) {
    DPClass e{0, {0, 0, 0, 0}};
    e.n[i] = -1;
    out.push_back(e);
  }
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      DPClass c{1, {0, 0, 0, 0}};
      c.n[i] = 1;
      c.n[j] = 1;
      out.push_back(c);
    }
  return out;
}

bool dp_is_ample(const DPClass& a) {
  for (const auto& c : dp_minus_one_curves())
    if (dp_pairing(a, c) <= 0) return false;
  return true;
}

DPClass dp_anticanonical() { return DPClass{3, {1, 1, 1, 1}}; }

DPClass cremona(const DPClass& a, std::array<int, 3> t) {
  for (int x : t)
    if (x < 1 || x > 4) throw InputError("cremona indices must lie in 1..4");
  if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) throw InputError("cremona indices must be distinct");
  const auto u = [&](int i) { return a.n[static_cast<std::size_t>(i - 1)]; };
  const long long s = checked::add(checked::add(u(t[0]), u(t[1])), u(t[2]));
  DPClass b = a;
  b.d = checked::sub(checked::mul(2, a.d), s);
  for (int x : t) b.n[static_cast<std::size_t>(x - 1)] = checked::add(checked::sub(a.d, s), u(x));
  return b;
}

DPClass transpose(const DPClass& a, int i, int j) {
  if (i < 1 || i > 4 || j < 1 || j > 4) throw InputError("transposition indices must lie in 1..4");
  DPClass b = a;
  std::swap(b.n[static_cast<std::size_t>(i - 1)], b.n[static_cast<std::size_t>(j - 1)]);
  return b;
}

std::string weyl_generator_name(int g) {
  static const char* names[] = {"s12", "s23", "s34", "c123"};
  if (g < 0 || g >= kWeylGenerators) throw InputError("unknown generator");
  return names[g];
}

DPClass apply_generator(const DPClass& a, int g) {
  switch (g) {
    case 0: return transpose(a, 1, 2);
    case 1: return transpose(a, 2, 3);
    case 2: return transpose(a, 3, 4);
    case 3: return cremona(a, {1, 2, 3});
    default: throw InputError("unknown generator");
  }
}

namespace {

using Matrix = std::array<std::array<long long, 5>, 5>;

DPClass from_vec(const std::array<long long, 5>& v) { return DPClass{v[0], {v[1], v[2], v[3], v[4]}}; }
std::array<long long, 5> to_vec(const DPClass& a) { return {a.d, a.n[0], a.n[1], a.n[2], a.n[3]}; }

Matrix generator_matrix(int g) {
  Matrix m{};
  for (std::size_t c = 0; c < 5; ++c) {
    std::array<long long, 5> e{};
    e[c] = 1;
    auto img = to_vec(apply_generator(from_vec(e), g));
    for (std::size_t r = 0; r < 5; ++r) m[r][c] = img[r];
  }
  return m;
}

Matrix mul(const Matrix& a, const Matrix& b) {
  Matrix c{};
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      for (std::size_t k = 0; k < 5; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

std::vector<WeylElement> generate_group() {
  Matrix id{};
  for (std::size_t i = 0; i < 5; ++i) id[i][i] = 1;
  std::vector<Matrix> gens;
  for (int g = 0; g < kWeylGenerators; ++g) gens.push_back(generator_matrix(g));
  std::vector<WeylElement> out{WeylElement{{}, id}};
  std::map<Matrix, std::size_t> seen{{id, 0}};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (int g = 0; g < kWeylGenerators; ++g) {
      // apply the word first, then g
      Matrix m = mul(gens[static_cast<std::size_t>(g)], out[head].matrix);
      if (seen.count(m)) continue;
      seen.emplace(m, out.size());
      WeylElement e{out[head].word, m};
      e.word.push_back(g);
      out.push_back(std::move(e));
    }
    if (out.size() > 100000) throw InvariantViolation("Weyl group generation does not terminate");
  }
  return out;
}

}  // namespace

DPClass WeylElement::apply(const DPClass& a) const {
  auto v = to_vec(a);
  std::array<long long, 5> r{};
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t k = 0; k < 5; ++k) r[i] = checked::add(r[i], checked::mul(matrix[i][k], v[k]));
  return from_vec(r);
}

std::string WeylElement::word_string() const {
  if (word.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) s += '.';
    s += weyl_generator_name(word[i]);
  }
  return s;
}

const std::vector<WeylElement>& weyl_group() {
  static const std::vector<WeylElement> group = generate_group();
  return group;
}

Normalized dp_normalize(const DPClass& a) {
  if (!dp_is_ample(a)) throw InputError("class " + dp_string(a) + " is not ample");
  Normalized out{a, {}, false};
  // bubble sort with adjacent transpositions, recording the word
  for (bool moved = true; moved;) {
    moved = false;
    for (int i = 0; i < 3; ++i) {
      if (out.cls.n[static_cast<std::size_t>(i)] < out.cls.n[static_cast<std::size_t>(i + 1)]) {
        out.cls = apply_generator(out.cls, i);
        out.witness.push_back(i);
        moved = true;
      }
    }
  }
  out.cls = apply_generator(out.cls, 3);
  out.witness.push_back(3);

  const auto curves = dp_minus_one_curves();
  bool distinct = true;
  for (std::size_t i = 0; i < curves.size() && distinct; ++i)
    for (std::size_t j = i + 1; j < curves.size(); ++j)
      if (dp_pairing(curves[i], curves[j]) == 0 &&
          dp_pairing(a, curves[i]) == dp_pairing(a, curves[j])) {
        distinct = false;
        break;
      }
  const auto& n = out.cls.n;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      long long lhs = n[i] + n[j] + n[3];
      if (lhs > out.cls.d || (distinct && lhs == out.cls.d))
        throw InvariantViolation("normalization inequality fails for " + dp_string(a) + " -> " +
                                 dp_string(out.cls));
    }
  out.strict = distinct;
  return out;
}

NAlpha n_alpha(const DPClass& a) {
  if (!dp_is_ample(a)) throw InputError("class " + dp_string(a) + " is not ample");
  NAlpha best;
  const auto& group = weyl_group();
  for (std::size_t i = 0; i < group.size(); ++i) {
    DPClass b = group[i].apply(a);
    CurveContext ctx;
    ctx.degree = b.d;
    ctx.n.assign(b.n.begin(), b.n.end());
    ctx.ambient_dim = 3;
    ctx.general_position = true;
    auto s = stability_range(ctx);
    if (!s.feasible) continue;
    if (!best.feasible || s.M > best.N) {
      best.feasible = true;
      best.N = s.M;
      best.argmax = i;
      best.image = b;
    }
  }
  return best;
}

std::vector<DPClass> random_ample_classes(std::uint64_t seed, std::size_t count, long long max_degree) {
  if (max_degree < 3) throw InputError("max_degree must be at least 3");
  std::mt19937_64 rng(seed);
  std::vector<DPClass> out;
  out.reserve(count);
  while (out.size() < count) {
    DPClass a;
    a.d = static_cast<long long>(rng() % static_cast<std::uint64_t>(max_degree)) + 1;
    for (auto& x : a.n) x = static_cast<long long>(rng() % static_cast<std::uint64_t>(a.d + 1));
    if (dp_is_ample(a)) out.push_back(a);
  }
  return out;
}

}  // namespace strata
