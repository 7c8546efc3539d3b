// Builds data/knot_table.csv and data/collisions.txt from the extracted
// KnotInfo rows.  Jones polynomials are recomputed from the reference PDs
// and must agree (up to mirror) with the published values.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "knotfert/invariants.hpp"
#include "knotfert/tables.hpp"

using namespace knotfert;

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: build_table RAW_CSV OUT_DIR\n";
    return 1;
  }
  std::ifstream in(argv[1]);
  if (!in) {
    std::cerr << "cannot open " << argv[1] << "\n";
    return 1;
  }
  std::string line;
  std::getline(in, line);  // header
  std::vector<KnotRecord> rows;
  int mismatches = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != 8) {
      std::cerr << "bad row: " << line << "\n";
      return 1;
    }
    KnotRecord r;
    r.name = f[0];
    r.c = std::stoi(f[1]);
    r.b = std::stoi(f[2]);
    r.g = std::stoi(f[3]);
    r.det = std::stoll(f[4]);
    r.amphichiral = f[5] == "1";
    r.pd = {f[6]};
    const auto published = LaurentPoly::from_pairs(f[7]);
    Diagram d;
    try {
      d = parse_diagram(f[6]);
    } catch (const Error& e) {
      std::cerr << r.name << ": reference PD rejected: " << e.what() << "\n";
      ++mismatches;
      continue;
    }
    if (d.crossing_count() != r.c) {
      std::cerr << r.name << ": PD has " << d.crossing_count() << " crossings\n";
      ++mismatches;
    }
    r.jones = jones(d);
    if (r.jones != published && r.jones.mirrored() != published) {
      std::cerr << r.name << ": Jones " << r.jones.to_string() << " vs published "
                << published.to_string() << "\n";
      ++mismatches;
    }
    if (stats(d).g < r.g) {
      std::cerr << r.name << ": diagram genus below table genus\n";
      ++mismatches;
    }
    rows.push_back(std::move(r));
  }
  if (mismatches) {
    std::cerr << mismatches << " mismatch(es); nothing written\n";
    return 2;
  }
  KnotTable table(rows);
  const std::string dir = argv[2];
  std::ofstream out(dir + "/knot_table.csv");
  write_table_csv(out, table.records());
  std::ofstream reg(dir + "/collisions.txt");
  reg << "# knots sharing (Jones up to mirror, determinant); recomputed at load\n";
  for (const auto& group : table.collisions()) {
    for (std::size_t i = 0; i < group.size(); ++i) reg << (i ? " " : "") << group[i];
    reg << "\n";
  }
  std::cout << table.size() << " records, horizon " << table.horizon() << ", "
            << table.collisions().size() << " collision group(s)\n";
  return 0;
}
