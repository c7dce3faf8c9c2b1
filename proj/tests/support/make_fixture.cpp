// Regenerates the checked-in synthetic archive under tests/fixtures/.
//   make_fixture <out_dir>

#include <iostream>

#include "fixtures.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixture <out_dir>\n";
    return 3;
  }
  const auto archive = repgeom::testing::layered_archive(repgeom::testing::paper_like_spec(16));
  repgeom::write_archive(archive, argv[1]);
  std::cout << "wrote " << archive.num_samples() << "x" << archive.num_layers() << "x"
            << archive.hidden_dim() << " archive to " << argv[1] << "\n";
  return 0;
}
