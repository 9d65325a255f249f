// Built-in point groups. Each group is generated from a faithful real matrix representation;
// the multiplication table is read off by matching matrix products.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "symvqe/point_group.hpp"

namespace symvqe {

namespace {

using Mat = Eigen::MatrixXd;

std::vector<std::vector<std::size_t>> table_from(const std::vector<Mat>& faithful) {
  const std::size_t n = faithful.size();
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Mat p = faithful[a] * faithful[b];
      auto it = std::find_if(faithful.begin(), faithful.end(),
                             [&](const Mat& m) { return (m - p).cwiseAbs().maxCoeff() < 1e-9; });
      if (it == faithful.end()) throw std::logic_error("builtin group: representation not closed");
      t[a][b] = static_cast<std::size_t>(it - faithful.begin());
    }
  }
  return t;
}

IrrepSpec irrep_from(std::string label, const std::vector<Mat>& mats) {
  IrrepSpec ir;
  ir.label = std::move(label);
  ir.dim = static_cast<int>(mats.front().rows());
  for (const auto& m : mats) ir.matrices.push_back(m.cast<Complex>());
  return ir;
}

IrrepSpec one_dim(std::string label, const std::vector<double>& chars) {
  std::vector<Mat> mats;
  for (double c : chars) mats.push_back(Mat::Constant(1, 1, c));
  return irrep_from(std::move(label), mats);
}

SubgroupIrrep sub_irrep(std::string label, const std::vector<double>& chars) {
  SubgroupIrrep s{std::move(label), {}};
  for (double c : chars) s.characters.emplace_back(c);
  return s;
}

Mat rot2(double angle) {
  Mat r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

GroupSpec make_cs() {
  Mat e = Mat::Identity(1, 1);
  Mat s = -Mat::Identity(1, 1);
  std::vector<Mat> faithful{e, s};
  SubgroupSpec self{"Cs", "Cs", {0, 1}, {sub_irrep("A'", {1, 1}), sub_irrep("A''", {1, -1})}, "A'"};
  return GroupSpec("Cs", {"E", "sigma"}, table_from(faithful), {one_dim("A'", {1, 1}), one_dim("A''", {1, -1})},
                   {self});
}

GroupSpec make_c2v() {
  // vector representation: C2 about z, sigma_v(xz), sigma_v'(yz)
  std::vector<Mat> faithful;
  for (auto d : {std::array{1.0, 1.0, 1.0}, {-1.0, -1.0, 1.0}, {1.0, -1.0, 1.0}, {-1.0, 1.0, 1.0}})
    faithful.push_back(Eigen::Vector3d(d[0], d[1], d[2]).asDiagonal());
  std::vector<IrrepSpec> irreps{one_dim("A1", {1, 1, 1, 1}), one_dim("A2", {1, 1, -1, -1}),
                                one_dim("B1", {1, -1, 1, -1}), one_dim("B2", {1, -1, -1, 1})};
  SubgroupSpec self{"C2v",
                    "C2v",
                    {0, 1, 2, 3},
                    {sub_irrep("A1", {1, 1, 1, 1}), sub_irrep("A2", {1, 1, -1, -1}), sub_irrep("B1", {1, -1, 1, -1}),
                     sub_irrep("B2", {1, -1, -1, 1})},
                    "A1"};
  return GroupSpec("C2v", {"E", "C2", "sigma_xz", "sigma_yz"}, table_from(faithful), std::move(irreps), {self});
}

GroupSpec make_c3v() {
  // E irrep in the real convention with sigma_v = diag(1, -1)
  const double third = 2.0 * std::numbers::pi / 3.0;
  Mat sv(2, 2);
  sv << 1, 0, 0, -1;
  std::vector<Mat> e{Mat::Identity(2, 2), rot2(third), rot2(2 * third), sv, rot2(third) * sv, rot2(2 * third) * sv};
  std::vector<IrrepSpec> irreps{one_dim("A1", {1, 1, 1, 1, 1, 1}), one_dim("A2", {1, 1, 1, -1, -1, -1}),
                                irrep_from("E", e)};
  SubgroupSpec cs{"Cs", "C3v", {0, 3}, {sub_irrep("A'", {1, 1}), sub_irrep("A''", {1, -1})}, "A'"};
  return GroupSpec("C3v", {"E", "C3", "C3^2", "sigma_v", "sigma_v'", "sigma_v''"}, table_from(e), std::move(irreps),
                   {cs});
}

GroupSpec make_td() {
  // T2 = the vector representation: signed permutation matrices whose signs multiply to +1
  std::vector<Mat> t2;
  std::array<int, 3> perm{0, 1, 2};
  do {
    for (int mask = 0; mask < 8; ++mask) {
      std::array<double, 3> s{mask & 1 ? -1.0 : 1.0, mask & 2 ? -1.0 : 1.0, mask & 4 ? -1.0 : 1.0};
      if (s[0] * s[1] * s[2] < 0) continue;
      Mat m = Mat::Zero(3, 3);
      for (int r = 0; r < 3; ++r) m(r, perm[r]) = s[r];
      t2.push_back(m);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  // name by class: E, C2 (det 1, tr -1), C3 (det 1, tr 0), S4 (det -1, tr -1), sigma_d (det -1, tr 1)
  std::vector<std::string> names;
  int n_c3 = 0, n_s4 = 0, n_sd = 0;
  for (const auto& m : t2) {
    const double det = m.determinant();
    const double tr = m.trace();
    if (det > 0 && tr > 2.5) {
      names.emplace_back("E");
    } else if (det > 0 && tr < -0.5) {
      const char axis = m(0, 0) > 0 ? 'x' : (m(1, 1) > 0 ? 'y' : 'z');
      names.push_back(std::string("C2") + axis);
    } else if (det > 0) {
      names.push_back("C3_" + std::to_string(++n_c3));
    } else if (tr < -0.5) {
      names.push_back("S4_" + std::to_string(++n_s4));
    } else {
      names.push_back("sd_" + std::to_string(++n_sd));
    }
  }

  // E irrep: permutation part acting on the plane orthogonal to (1,1,1)
  Eigen::Matrix<double, 3, 2> u;
  u << 1 / std::sqrt(2.0), 1 / std::sqrt(6.0), -1 / std::sqrt(2.0), 1 / std::sqrt(6.0), 0, -2 / std::sqrt(6.0);
  std::vector<Mat> a1, a2, e, t1;
  for (const auto& m : t2) {
    const double det = m.determinant();
    a1.push_back(Mat::Identity(1, 1));
    a2.push_back(Mat::Constant(1, 1, det));
    t1.push_back(det * m);
    const Mat perm_part = m.cwiseAbs();
    e.push_back(u.transpose() * perm_part * u);
  }
  std::vector<IrrepSpec> irreps{irrep_from("A1", a1), irrep_from("A2", a2), irrep_from("E", e), irrep_from("T1", t1),
                                irrep_from("T2", t2)};

  // Klein subgroup {E, C2x, C2y, C2z}; B_k is symmetric under the C2 about axis k (D2 convention)
  auto idx = [&](const std::string& n) {
    return static_cast<std::size_t>(std::find(names.begin(), names.end(), n) - names.begin());
  };
  SubgroupSpec d2{"D2",
                  "Td",
                  {idx("E"), idx("C2z"), idx("C2y"), idx("C2x")},
                  {sub_irrep("A", {1, 1, 1, 1}), sub_irrep("B1", {1, 1, -1, -1}), sub_irrep("B2", {1, -1, 1, -1}),
                   sub_irrep("B3", {1, -1, -1, 1})},
                  "A"};
  return GroupSpec("Td", std::move(names), table_from(t2), std::move(irreps), {d2});
}

}  // namespace

GroupSpec builtin_group(const std::string& name) {
  if (name == "Cs") return make_cs();
  if (name == "C2v") return make_c2v();
  if (name == "C3v") return make_c3v();
  if (name == "Td") return make_td();
  throw std::invalid_argument("unknown built-in group '" + name + "' (expected Cs, C2v, C3v or Td)");
}

std::string default_subgroup(const std::string& group) {
  if (group == "Cs") return "Cs";
  if (group == "C2v") return "C2v";
  if (group == "C3v") return "Cs";
  if (group == "Td") return "D2";
  throw std::invalid_argument("no default Abelian subgroup for '" + group + "'");
}

}  // namespace symvqe
