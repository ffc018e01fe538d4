// Benchmark comparing the serial reference path against the OpenMP path on
// the two embarrassingly parallel workloads: identity-suite verification and
// the exhaustive Garside oracle scan.

#include <chrono>
#include <cstdio>
#include <set>
#include <vector>

#include "dlcoh/cohomology.hpp"
#include "dlcoh/parallel.hpp"

using namespace dlcoh;

namespace {

double now() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

std::vector<Word> all_words(int rank, int len) {
  std::vector<Word> out{{}};
  size_t lo = 0;
  for (int l = 0; l < len; l++) {
    size_t hi = out.size();
    for (size_t i = lo; i < hi; i++)
      for (int s = 0; s < rank; s++) {
        Word v = out[i];
        v.push_back((uint8_t)s);
        out.push_back(v);
      }
    lo = hi;
  }
  return out;
}

double bench_suites(int threads, int repeats) {
  double t0 = now();
  for (int r = 0; r < repeats; r++) {
    for (auto& name : GroupType::all_names()) {
      std::string lower = name;
      for (auto& ch : lower) ch = (char)tolower(ch);
      auto suite = load_suite(data_dir() + "/suites/" + lower + ".ids");
      auto rep = verify_suite(GroupType::get(name), suite, threads);
      if (!rep.ok()) {
        fprintf(stderr, "suite %s failed during benchmark\n", name.c_str());
        exit(1);
      }
    }
  }
  return now() - t0;
}

double bench_garside(int threads, int len) {
  const auto& b2 = CoxeterSystem::preset("B2");
  auto words = all_words(2, len);
  std::vector<int> lens(words.size());
  double t0 = now();
  parallel_for(words.size(), [&](size_t i) {
    BraidElt b = BraidElt::of_word(b2, words[i]);
    // alpha + full self-divisibility row
    volatile int sink = b.alpha().id;
    (void)sink;
    int cnt = 0;
    for (size_t j = 0; j < words.size(); j += 3)
      cnt += left_divides(BraidElt::of_word(b2, words[j]), b);
    lens[i] = cnt;
  }, threads);
  double dt = now() - t0;
  long long total = 0;
  for (int v : lens) total += v;
  printf("  (checksum %lld)\n", total);
  return dt;
}

}  // namespace

int main(int argc, char** argv) {
  int repeats = argc > 1 ? atoi(argv[1]) : 3;
  int len = argc > 2 ? atoi(argv[2]) : 11;

  // memoization in the resolver would skew the comparison; warm it once so
  // both paths measure the same steady state
  bench_suites(1, 1);

  printf("identity suites, %d repeat(s):\n", repeats);
  double serial = bench_suites(1, repeats);
  printf("  serial reference: %.3fs\n", serial);
  double par = bench_suites(0, repeats);
  printf("  OpenMP:           %.3fs  (speedup %.2fx)\n", par, serial / par);

  printf("Garside scan over B2 words of length <= %d:\n", len);
  double gs = bench_garside(1, len);
  printf("  serial reference: %.3fs\n", gs);
  double gp = bench_garside(0, len);
  printf("  OpenMP:           %.3fs  (speedup %.2fx)\n", gp, gs / gp);
  return 0;
}
