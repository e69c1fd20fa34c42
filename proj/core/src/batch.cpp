#include "geac/batch.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "geac/errors.hpp"

namespace geac {

std::vector<BatchEntry> run_batch(const std::vector<Scenario>& scenarios,
                                  int parallelism,
                                  std::optional<double> kappa_override) {
  if (parallelism < 1) throw InvalidOptions("parallelism must be >= 1");

  std::vector<BatchEntry> entries(scenarios.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= scenarios.size()) return;
      entries[i].name = scenarios[i].name;
      try {
        const ResolvedScenario rs = resolve(scenarios[i], kappa_override);
        entries[i].report = assess_post_fault(rs.model, rs.init, rs.options);
      } catch (const std::exception& e) {
        entries[i].error = e.what();
      }
    }
  };

  const std::size_t n_workers = std::min<std::size_t>(
      static_cast<std::size_t>(parallelism), std::max<std::size_t>(scenarios.size(), 1));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t k = 0; k < n_workers; ++k) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return entries;
}

}  // namespace geac
