/*
 * Copyright 2026 The mst Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// mst: command-line front end.
//
// Exit codes: 0 success (or key found), 1 key not found, 2 usage error or
// parameter out of range, 3 unreadable or malformed data.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mst/asymptotics.hpp"
#include "mst/codec.hpp"
#include "mst/error.hpp"
#include "mst/random.hpp"
#include "mst/spectra.hpp"
#include "mst/tree.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitNotFound = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sig12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fixed3(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

// JSON carries the same digits as the text and CSV renderings.
double json_num(const std::string& rendered) { return std::strtod(rendered.c_str(), nullptr); }

ordered_json json_vec(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(json_num(sig12(x)));
  return a;
}

std::string join12(const std::vector<double>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += sig12(v[i]);
  }
  return out;
}

enum class Format { kText, kCsv, kJson };

Format parse_format(const std::string& f) {
  if (f == "text") return Format::kText;
  if (f == "csv") return Format::kCsv;
  if (f == "json") return Format::kJson;
  throw UsageError("unknown format '" + f + "' (text, csv, json)");
}

// A table of rows, each cell already rendered.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<bool> numeric;

  void print(Format format) const {
    switch (format) {
      case Format::kText:
        for (const auto& row : rows) {
          std::string line;
          for (std::size_t c = 0; c < row.size(); ++c) {
            char buf[64];
            std::snprintf(buf, sizeof buf, c == 0 ? "%-4s" : " %8s", row[c].c_str());
            line += buf;
          }
          std::cout << line << '\n';
        }
        break;
      case Format::kCsv:
        for (std::size_t c = 0; c < columns.size(); ++c) {
          std::cout << (c ? "," : "") << columns[c];
        }
        std::cout << '\n';
        for (const auto& row : rows) {
          for (std::size_t c = 0; c < row.size(); ++c) {
            std::cout << (c ? "," : "") << row[c];
          }
          std::cout << '\n';
        }
        break;
      case Format::kJson: {
        ordered_json out = ordered_json::array();
        for (const auto& row : rows) {
          ordered_json obj;
          for (std::size_t c = 0; c < row.size(); ++c) {
            if (numeric[c]) {
              obj[columns[c]] = json_num(row[c]);
            } else {
              obj[columns[c]] = row[c];
            }
          }
          out.push_back(obj);
        }
        std::cout << out.dump(2) << '\n';
        break;
      }
    }
  }
};

Table lambda2_table(unsigned lo, unsigned hi) {
  Table t{{"m", "re_lambda2", "regime"}, {}, {true, true, false}};
  for (unsigned m = lo; m <= hi; ++m) {
    const mst::SpectralReport r = mst::eigen_spectrum(m);
    t.rows.push_back({std::to_string(m), fixed3(r.lambda2_re), mst::to_string(r.regime)});
  }
  return t;
}

Table relsize_table(unsigned k, unsigned p, unsigned b) {
  Table t{{"m", "relative_size"}, {}, {true, true}};
  for (unsigned m = 2; m <= 27; ++m) {
    t.rows.push_back({std::to_string(m), fixed3(mst::relative_limit_exact(m, k, p, b))});
  }
  return t;
}

void require_m(unsigned m) {
  if (m < 2) throw UsageError("--m must be at least 2");
}

int cmd_spectra(unsigned lo, unsigned hi, const std::string& format) {
  if (lo < 2 || hi > mst::kMaxSpectralM || lo > hi) {
    throw UsageError("need 2 <= --m-min <= --m-max <= " +
                     std::to_string(mst::kMaxSpectralM));
  }
  lambda2_table(lo, hi).print(parse_format(format));
  return kExitOk;
}

int cmd_tables(const std::string& which, unsigned k, unsigned p, unsigned b,
               const std::string& format) {
  const Format f = parse_format(format);
  if (which == "lambda2") {
    lambda2_table(2, 27).print(f);
  } else if (which == "relsize") {
    relsize_table(k, p, b).print(f);
  } else {
    throw UsageError("unknown table '" + which + "' (lambda2, relsize)");
  }
  return kExitOk;
}

int cmd_limits(unsigned m, const std::string& format) {
  require_m(m);
  const Format f = parse_format(format);
  const mst::LimitProfile lp = mst::limit_profile(m);
  const std::vector<std::pair<std::string, double>> scalars{
      {"leaf_fraction", lp.leaf_fraction},
      {"node_fraction", lp.node_fraction},
      {"protected_fraction", lp.protected_fraction},
      {"quoted_protected_fraction", lp.quoted_protected_fraction},
      {"full_fraction", lp.full_fraction},
  };
  const char* note =
      "protected_fraction counts non-leaves (node - leaf); the often quoted "
      "constant 1/(2(m+1)(H_m-1)) is half of it";
  if (f == Format::kJson) {
    ordered_json out;
    out["m"] = m;
    out["v"] = json_vec(lp.v);
    out["v_star"] = json_vec(lp.v_star);
    for (const auto& [name, value] : scalars) out[name] = json_num(sig12(value));
    out["note"] = note;
    std::cout << out.dump(2) << '\n';
  } else if (f == Format::kCsv) {
    std::cout << "quantity,index,value\n";
    for (std::size_t i = 0; i < lp.v.size(); ++i) {
      std::cout << "v," << i + 1 << ',' << sig12(lp.v[i]) << '\n';
    }
    for (std::size_t i = 0; i < lp.v_star.size(); ++i) {
      std::cout << "v_star," << i << ',' << sig12(lp.v_star[i]) << '\n';
    }
    for (const auto& [name, value] : scalars) {
      std::cout << name << ",," << sig12(value) << '\n';
    }
  } else {
    std::cout << "m " << m << '\n';
    std::cout << "v " << join12(lp.v, " ") << '\n';
    std::cout << "v_star " << join12(lp.v_star, " ") << '\n';
    for (const auto& [name, value] : scalars) {
      std::cout << name << ' ' << sig12(value) << '\n';
    }
    std::cout << "note " << note << '\n';
  }
  return kExitOk;
}

int cmd_simulate(unsigned m, std::uint64_t n, std::uint64_t trials,
                 std::uint64_t seed, const std::string& format) {
  require_m(m);
  if (n < 1) throw UsageError("--n must be at least 1");
  if (trials < 1) throw UsageError("--trials must be at least 1");
  const Format f = parse_format(format);
  const mst::ConvergenceReport r = mst::monte_carlo(m, n, trials, seed);
  const std::vector<std::pair<std::string, double>> scalars{
      {"mean_leaf_fraction", r.mean_leaf_fraction},
      {"mean_node_fraction", r.mean_node_fraction},
      {"mean_protected_fraction", r.mean_protected_fraction},
      {"gap_sup_deviation", r.gap_sup_deviation},
      {"degree_sup_deviation", r.degree_sup_deviation},
  };
  const std::vector<std::pair<std::string, const std::vector<double>*>> vectors{
      {"mean_gap_fraction", &r.mean_gap_fraction},
      {"mean_degree_fraction", &r.mean_degree_fraction},
      {"gap_deviation", &r.gap_deviation},
      {"degree_deviation", &r.degree_deviation},
  };
  if (f == Format::kJson) {
    ordered_json out;
    out["m"] = m;
    out["n"] = n;
    out["trials"] = trials;
    out["seed"] = seed;
    for (const auto& [name, v] : vectors) out[name] = json_vec(*v);
    for (const auto& [name, value] : scalars) out[name] = json_num(sig12(value));
    std::cout << out.dump(2) << '\n';
  } else if (f == Format::kCsv) {
    std::cout << "quantity,index,value\n";
    for (const auto& [name, v] : vectors) {
      for (std::size_t i = 0; i < v->size(); ++i) {
        std::cout << name << ',' << i << ',' << sig12((*v)[i]) << '\n';
      }
    }
    for (const auto& [name, value] : scalars) {
      std::cout << name << ",," << sig12(value) << '\n';
    }
  } else {
    std::cout << "m " << m << "\nn " << n << "\ntrials " << trials << "\nseed "
              << seed << '\n';
    for (const auto& [name, v] : vectors) {
      std::cout << name << ' ' << join12(*v, " ") << '\n';
    }
    for (const auto& [name, value] : scalars) {
      std::cout << name << ' ' << sig12(value) << '\n';
    }
  }
  return kExitOk;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<mst::Key> read_permutation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<mst::Key> keys;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    if (token.find_first_not_of("0123456789") != std::string::npos ||
        token.size() > 20) {
      throw DataError(path + ":" + std::to_string(line_no) + ": not a rank: '" +
                      token + "'");
    }
    errno = 0;
    const unsigned long long v = std::strtoull(token.c_str(), nullptr, 10);
    if (errno == ERANGE) {
      throw DataError(path + ":" + std::to_string(line_no) + ": rank out of range");
    }
    keys.push_back(v);
  }
  return keys;
}

int cmd_build(const std::string& input, std::uint64_t random_n,
              std::uint64_t seed, const std::string& output, unsigned m,
              unsigned k, unsigned p) {
  require_m(m);
  const mst::SizeParams params = mst::size_params(m, k, p);
  std::vector<mst::Key> keys;
  if (!input.empty() && random_n > 0) {
    throw UsageError("give either --input or --random-n, not both");
  }
  if (!input.empty()) {
    keys = read_permutation(input);
  } else if (random_n > 0) {
    mst::Xoshiro256 rng(seed);
    keys = mst::random_permutation(random_n, rng);
  } else {
    throw UsageError("build needs --input or --random-n");
  }
  const mst::MaryTree tree = mst::build_from_permutation(m, keys);
  const mst::CompactImage image = mst::encode(tree, params);
  {
    std::ofstream out(output, std::ios::binary);
    out.write(reinterpret_cast<const char*>(image.bytes.data()),
              static_cast<std::streamsize>(image.bytes.size()));
    if (!out) throw DataError("cannot write " + output);
  }
  const std::uint64_t formula =
      mst::compact_size(tree, params, mst::DescriptorWidth::kCodec).total;
  const std::uint64_t plain = mst::plain_size(tree.node_count(), params);
  const std::uint64_t payload = image.payload().size();
  std::cout << "keys " << tree.size() << '\n'
            << "nodes " << tree.node_count() << '\n'
            << "header_bytes " << image.bytes.size() - payload << '\n'
            << "payload_bytes " << payload << '\n'
            << "formula_bytes " << formula << '\n'
            << "plain_bytes " << plain << '\n'
            << "ratio " << sig12(static_cast<double>(payload) / static_cast<double>(plain))
            << '\n';
  return kExitOk;
}

int cmd_inspect(const std::string& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  const mst::ImageHeader h = mst::parse_header(bytes);
  const mst::MaryTree tree = mst::decode(bytes);
  const mst::SizeParams params = mst::size_params(h.m, h.key_bytes, h.link_bytes);
  const mst::SizeBreakdown b =
      mst::compact_size(tree, params, mst::DescriptorWidth::kCodec);
  std::cout << "m " << h.m << "\nk " << h.key_bytes << "\np " << h.link_bytes
            << "\nkeys " << h.n << "\nnodes " << tree.node_count() << '\n';
  const std::vector<std::int64_t> types = mst::type_counts(tree);
  for (std::size_t t = 0; t < types.size(); ++t) {
    if (types[t] != 0) std::cout << "type " << t + 1 << ' ' << types[t] << '\n';
  }
  std::cout << "full_nodes_bytes " << b.full_nodes_bytes << '\n'
            << "internal_bytes " << b.internal_bytes << '\n'
            << "full_leaf_bytes " << b.full_leaf_bytes << '\n'
            << "partial_leaf_bytes " << b.partial_leaf_bytes << '\n'
            << "formula_bytes " << b.total << '\n'
            << "payload_bytes " << bytes.size() - h.size() << '\n'
            << "plain_bytes " << mst::plain_size(tree.node_count(), params) << '\n';
  return kExitOk;
}

int cmd_get(const std::string& path, std::uint64_t key) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  const bool found = mst::lookup(bytes, key);
  std::cout << (found ? "found" : "not found") << '\n';
  return found ? kExitOk : kExitNotFound;
}

int exit_code_for(const mst::Error& e) {
  switch (e.kind()) {
    case mst::ErrorKind::kInvalidParameter:
    case mst::ErrorKind::kKeyOverflow:
      return kExitUsage;
    default:
      return kExitData;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random m-ary search trees: profiles, urn spectra and compact images"};
  app.require_subcommand(1);

  std::string format = "text";
  unsigned m = 0;
  unsigned m_min = 2;
  unsigned m_max = 27;
  std::uint64_t n = 0;
  std::uint64_t trials = 10;
  std::uint64_t seed = mst::kDefaultSeed;
  unsigned k = 4;
  unsigned p = 4;
  unsigned b = 8;
  std::string which;
  std::string input;
  std::string output = "tree.cmst";
  std::string image;
  std::uint64_t random_n = 0;
  std::uint64_t key = 0;

  auto* spectra = app.add_subcommand("spectra", "Re(lambda_2) and regime per m");
  spectra->add_option("--m-min", m_min, "smallest m")->capture_default_str();
  spectra->add_option("--m-max", m_max, "largest m")->capture_default_str();
  spectra->add_option("--format", format, "text, csv or json")->capture_default_str();

  auto* limits = app.add_subcommand("limits", "limiting gap and degree fractions");
  limits->add_option("--m", m, "branching factor")->required();
  limits->add_option("--format", format, "text, csv or json")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo profile convergence");
  simulate->add_option("--m", m, "branching factor")->required();
  simulate->add_option("--n", n, "keys per tree")->required();
  simulate->add_option("--trials", trials, "independent trees")->capture_default_str();
  simulate->add_option("--seed", seed, "master seed")->capture_default_str();
  simulate->add_option("--format", format, "text, csv or json")->capture_default_str();

  auto* tables = app.add_subcommand("tables", "m = 2..27 tables");
  tables->add_option("--which", which, "lambda2 or relsize")->required();
  tables->add_option("--k", k, "bytes per key")->capture_default_str();
  tables->add_option("--p", p, "bytes per link")->capture_default_str();
  tables->add_option("--b", b, "bits per byte")->capture_default_str();
  tables->add_option("--format", format, "text, csv or json")->capture_default_str();

  auto* compress = app.add_subcommand("compress", "compact tree images");
  compress->require_subcommand(1);
  auto* build = compress->add_subcommand("build", "write a compact image");
  build->add_option("--input", input, "permutation file, one rank per line");
  build->add_option("--random-n", random_n, "use a random permutation of 1..N");
  build->add_option("--seed", seed, "seed for --random-n")->capture_default_str();
  build->add_option("--output", output, "image path")->capture_default_str();
  build->add_option("--m", m, "branching factor")->required();
  build->add_option("--k", k, "bytes per key")->capture_default_str();
  build->add_option("--p", p, "bytes per link")->capture_default_str();
  auto* inspect = compress->add_subcommand("inspect", "summarize an image");
  inspect->add_option("image", image, "image path")->required();
  auto* get = compress->add_subcommand("get", "look a key up in an image");
  get->add_option("image", image, "image path")->required();
  get->add_option("--key", key, "key to find")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*spectra) return cmd_spectra(m_min, m_max, format);
    if (*limits) return cmd_limits(m, format);
    if (*simulate) return cmd_simulate(m, n, trials, seed, format);
    if (*tables) return cmd_tables(which, k, p, b, format);
    if (*build) return cmd_build(input, random_n, seed, output, m, k, p);
    if (*inspect) return cmd_inspect(image);
    if (*get) return cmd_get(image, key);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const mst::Error& e) {
    std::cerr << "error: " << mst::to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitUsage;
}
