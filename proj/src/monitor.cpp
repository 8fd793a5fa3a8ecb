#include "dmmm/monitor.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <tuple>

#include "dmmm/errors.hpp"

namespace dmmm {

std::string_view to_string(UsageProfile profile) {
  switch (profile) {
    case UsageProfile::Flat: return "flat";
    case UsageProfile::Bursty: return "bursty";
    case UsageProfile::Diurnal: return "diurnal";
  }
  return "?";
}

UsageProfile parse_profile(std::string_view label) {
  for (auto p : {UsageProfile::Flat, UsageProfile::Bursty, UsageProfile::Diurnal}) {
    if (to_string(p) == label) return p;
  }
  throw ValidationError(ValidationCode::InvalidArgument,
                        "unknown usage profile '" + std::string(label) + "' (expected flat, bursty or diurnal)");
}

namespace {

constexpr std::int64_t kFlatAmount = 10;

// Relative load over a 24-bucket day.
constexpr std::array<std::int64_t, 24> kDayShape = {1, 1, 1, 1, 1, 2, 3, 5, 7, 8, 9, 9,
                                                    8, 9, 9, 8, 7, 6, 5, 4, 3, 2, 2, 1};

std::int64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return static_cast<std::int64_t>(rng() % bound);
}

}  // namespace

std::vector<UsageRecord> synthesize_usage(const SynthesisParams& params) {
  if (params.customers < 1) throw ValidationError(ValidationCode::InvalidArgument, "zero customers");
  if (params.resources < 1) throw ValidationError(ValidationCode::InvalidArgument, "zero resources");
  if (params.horizon < 1) throw ValidationError(ValidationCode::InvalidArgument, "horizon must be >= 1");

  std::mt19937_64 rng(params.seed);
  std::vector<UsageRecord> out;
  out.reserve(static_cast<std::size_t>(params.customers) * static_cast<std::size_t>(params.resources) *
              static_cast<std::size_t>(params.horizon));
  for (int c = 1; c <= params.customers; ++c) {
    const std::int64_t scale = 1 + draw(rng, 4);
    for (int r = 1; r <= params.resources; ++r) {
      const std::int64_t phase = draw(rng, 4);
      for (Time b = 0; b < params.horizon; ++b) {
        std::int64_t amount = 0;
        switch (params.profile) {
          case UsageProfile::Flat:
            amount = kFlatAmount;
            break;
          case UsageProfile::Bursty: {
            std::int64_t base = draw(rng, 3);
            if (draw(rng, 6) == 0) base += 8 + draw(rng, 12);
            amount = scale * base;
            break;
          }
          case UsageProfile::Diurnal:
            amount = scale * kDayShape[static_cast<std::size_t>((b + phase) % 24)] + draw(rng, 3);
            break;
        }
        out.push_back({"c" + std::to_string(c), "r" + std::to_string(r), b, amount});
      }
    }
  }
  return out;
}

UsageStore ingest_usage(std::span<const UsageRecord> records) {
  UsageStore store;
  std::set<std::tuple<std::string_view, std::string_view, Time>> seen;
  for (const auto& rec : records) {
    const std::string where = "customer '" + rec.customer_id + "', resource '" + rec.resource_id +
                              "', bucket " + std::to_string(rec.bucket_start);
    if (rec.amount < 0) throw ValidationError(ValidationCode::NegativeAmount, where);
    if (rec.bucket_start < 0) throw ValidationError(ValidationCode::NegativeBucket, where);
    if (!seen.emplace(rec.customer_id, rec.resource_id, rec.bucket_start).second) {
      throw ValidationError(ValidationCode::DuplicateUsageKey, where);
    }
    auto& c = store.customers_[rec.customer_id];
    c.total += rec.amount;
    c.by_resource[rec.resource_id] += rec.amount;
    c.by_bucket[rec.bucket_start] += rec.amount;
    store.horizon_ = std::max(store.horizon_, rec.bucket_start + 1);
  }
  return store;
}

std::vector<std::string> UsageStore::customers() const {
  std::vector<std::string> ids;
  ids.reserve(customers_.size());
  for (const auto& [id, _] : customers_) ids.push_back(id);
  return ids;
}

bool UsageStore::has_customer(std::string_view customer) const {
  return customers_.find(customer) != customers_.end();
}

const UsageStore::Customer& UsageStore::customer(std::string_view id) const {
  auto it = customers_.find(id);
  if (it == customers_.end()) throw ValidationError(ValidationCode::UnknownCustomer, std::string(id));
  return it->second;
}

std::int64_t UsageStore::customer_total(std::string_view customer_id) const { return customer(customer_id).total; }

std::int64_t UsageStore::resource_total(std::string_view customer_id, std::string_view resource) const {
  const auto& by = customer(customer_id).by_resource;
  auto it = by.find(resource);
  return it == by.end() ? 0 : it->second;
}

const std::map<std::string, std::int64_t, IdLess>& UsageStore::resource_totals(std::string_view customer_id) const {
  return customer(customer_id).by_resource;
}

std::vector<std::int64_t> UsageStore::bucket_totals(std::string_view customer_id) const {
  std::vector<std::int64_t> totals(static_cast<std::size_t>(horizon_), 0);
  for (const auto& [bucket, amount] : customer(customer_id).by_bucket) {
    totals[static_cast<std::size_t>(bucket)] = amount;
  }
  return totals;
}

namespace {

template <typename Pred>
std::vector<Window> runs(const std::vector<std::int64_t>& totals, Pred qualifies) {
  std::vector<Window> out;
  for (std::size_t i = 0; i < totals.size();) {
    if (!qualifies(totals[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < totals.size() && qualifies(totals[j])) ++j;
    out.push_back({static_cast<Time>(i), static_cast<Time>(j)});
    i = j;
  }
  return out;
}

}  // namespace

std::vector<Window> peak_windows(const UsageStore& store, std::string_view customer, std::int64_t threshold) {
  if (threshold <= 0) {
    throw ValidationError(ValidationCode::InvalidThreshold, "peak threshold must be > 0");
  }
  return runs(store.bucket_totals(customer), [threshold](std::int64_t v) { return v >= threshold; });
}

std::vector<Window> dormant_windows(const UsageStore& store, std::string_view customer, std::int64_t threshold) {
  if (threshold < 0) {
    throw ValidationError(ValidationCode::InvalidThreshold, "dormant threshold must be >= 0");
  }
  return runs(store.bucket_totals(customer), [threshold](std::int64_t v) { return v <= threshold; });
}

UsageReport build_report(const UsageStore& store, std::int64_t peak_threshold, std::int64_t dormant_threshold) {
  if (peak_threshold <= 0) throw ValidationError(ValidationCode::InvalidThreshold, "peak threshold must be > 0");
  if (dormant_threshold < 0) throw ValidationError(ValidationCode::InvalidThreshold, "dormant threshold must be >= 0");
  if (dormant_threshold >= peak_threshold) {
    throw ValidationError(ValidationCode::ThresholdOrder,
                          "dormant threshold " + std::to_string(dormant_threshold) +
                              " must be below peak threshold " + std::to_string(peak_threshold));
  }
  UsageReport report;
  report.horizon = store.horizon();
  report.peak_threshold = peak_threshold;
  report.dormant_threshold = dormant_threshold;
  for (const auto& id : store.customers()) {
    report.customer_totals[id] = store.customer_total(id);
    report.resource_totals[id] = store.resource_totals(id);
    for (const auto& w : peak_windows(store, id, peak_threshold)) report.peak_windows.push_back({id, w});
    for (const auto& w : dormant_windows(store, id, dormant_threshold)) report.dormant_windows.push_back({id, w});
  }
  return report;
}

ClassificationRule ClassificationRule::quartiles() {
  return {{{"benefited", 4, 0.75}, {"important", 3, 0.5}, {"casual", 2, 0.25}, {"lesser-privileged", 1, 0.0}}};
}

std::vector<UserBand> ClassificationRule::validated() const {
  if (bands.empty()) throw ValidationError(ValidationCode::InvalidRule, "empty rule");
  std::vector<UserBand> sorted = bands;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const UserBand& a, const UserBand& b) { return a.priority > b.priority; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& b = sorted[i];
    if (b.user_type.empty()) throw ValidationError(ValidationCode::InvalidRule, "band without a user type");
    if (b.priority < 1) throw ValidationError(ValidationCode::InvalidRule, "band '" + b.user_type + "' priority < 1");
    if (!(b.min_quantile >= 0.0 && b.min_quantile <= 1.0)) {
      throw ValidationError(ValidationCode::InvalidRule, "band '" + b.user_type + "' quantile outside [0, 1]");
    }
    if (i > 0) {
      if (sorted[i - 1].priority == b.priority) {
        throw ValidationError(ValidationCode::InvalidRule, "priorities must be distinct");
      }
      if (!(b.min_quantile < sorted[i - 1].min_quantile)) {
        throw ValidationError(ValidationCode::InvalidRule,
                              "quantile bounds must strictly decrease with priority");
      }
    }
  }
  if (sorted.back().min_quantile != 0.0) {
    throw ValidationError(ValidationCode::InvalidRule, "lowest band must start at quantile 0");
  }
  return sorted;
}

std::vector<UserProfile> classify_users(const UsageReport& report, const ClassificationRule& rule) {
  const auto bands = rule.validated();
  std::vector<std::pair<std::string, std::int64_t>> ranked(report.customer_totals.begin(),
                                                           report.customer_totals.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return compare_ids(a.first, b.first) < 0;
  });

  const std::size_t n = ranked.size();
  std::map<std::string, UserProfile, IdLess> out;
  for (std::size_t r = 0; r < n; ++r) {
    // quantile = (n-1-r)/(n-1); compared without dividing
    const double above = n == 1 ? 1.0 : static_cast<double>(n - 1 - r);
    const double scale = n == 1 ? 1.0 : static_cast<double>(n - 1);
    const UserBand* band = &bands.back();
    for (const auto& b : bands) {
      if (above >= b.min_quantile * scale) {
        band = &b;
        break;
      }
    }
    out[ranked[r].first] = UserProfile{ranked[r].first, band->user_type, band->priority};
  }
  std::vector<UserProfile> users;
  users.reserve(out.size());
  for (auto& [_, u] : out) users.push_back(std::move(u));
  return users;
}

}  // namespace dmmm
