// Solve a few board sizes with both still-life solvers and print the boards.
#include <chrono>
#include <iostream>

#include "stillife/be_solver.hpp"
#include "stillife/hyb_solver.hpp"
#include "stillife/life.hpp"

using namespace stillife;

int main() {
  for (int n : {4, 6, 8}) {
    auto t0 = std::chrono::steady_clock::now();
    SlSolveResult r = solve_sl_be(n, true);
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    std::cout << "side " << n << ": " << n * n - r.optimum.raw()
              << " alive, " << r.optimum.raw() << " dead, "
              << r.count->value() << " optimal patterns, " << ms << " ms\n"
              << print_pattern(r.pattern) << "\n";
  }

  // Larger sizes call for the branch-and-eliminate search instead of the
  // full table sweep.
  for (int n : {12, 13}) {
    auto t0 = std::chrono::steady_clock::now();
    SlSolveResult r = solve_sl_hyb(n);
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    std::cout << "side " << n << ": " << n * n - r.optimum.raw()
              << " alive, " << r.optimum.raw() << " dead, " << ms << " ms\n"
              << print_pattern(r.pattern) << "\n";
  }
  return 0;
}
