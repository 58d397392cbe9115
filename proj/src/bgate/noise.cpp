#include "bgate/noise.hpp"

#include "bgate/common.hpp"

namespace bgate {

NoiseMap NoiseMap::parametric(double k) {
  if (!(k > 0.0)) {
    fail(ErrorCode::InvalidArgument, "noise map requires k > 0");
  }
  NoiseMap n(Kind::Parametric);
  n.k_ = k;
  return n;
}

NoiseMap NoiseMap::tabulated(MonotoneTable table) {
  if (!table.is_increasing()) {
    fail(ErrorCode::InvalidArgument, "tabulated noise map must be strictly increasing");
  }
  NoiseMap n(Kind::Tabulated);
  n.table_ = std::move(table);
  return n;
}

NoiseMap NoiseMap::from_generator(ConcatGenerator g) {
  NoiseMap n(Kind::FromGenerator);
  n.generator_ = std::move(g);
  return n;
}

std::string NoiseMap::describe() const {
  switch (kind_) {
    case Kind::Parametric: return "kt(k=" + format_number(k_) + ")";
    case Kind::Tabulated: return "table[" + std::to_string(table_->knots().size()) + " knots]";
    case Kind::FromGenerator: return "1/f(1/t) with f=" + generator_->describe();
  }
  return "?";
}

double NoiseMap::value(double t) const {
  if (!(t > 0.0)) {
    fail(ErrorCode::InvalidArgument, "noise map argument must be positive");
  }
  switch (kind_) {
    case Kind::Parametric: return k_ * t;
    case Kind::Tabulated: return table_->value(t);
    case Kind::FromGenerator: return 1.0 / generator_->forward(1.0 / t);
  }
  return 0.0;
}

NoiseMap NoiseMap::scaled(double m) const {
  if (!(m > 0.0)) {
    fail(ErrorCode::InvalidArgument, "noise scale must be positive");
  }
  switch (kind_) {
    case Kind::Parametric: return parametric(m * k_);
    case Kind::Tabulated: {
      auto knots = table_->knots();
      for (auto& kn : knots) kn.second *= m;
      return tabulated(MonotoneTable::strict(std::move(knots)));
    }
    case Kind::FromGenerator:
      // m * (1/f(1/t)) = 1/((f/m)(1/t))
      return from_generator(generator_->scaled_by(1.0 / m));
  }
  fail(ErrorCode::InvalidArgument, "unreachable");
}

ConcatGenerator generator_from_kappa(const NoiseMap& kappa) {
  switch (kappa.kind()) {
    case NoiseMap::Kind::Parametric:
      return ConcatGenerator::scaled_identity(kappa.k());
    case NoiseMap::Kind::Tabulated:
      return ConcatGenerator::from_table(kappa.table()->reciprocal_reindexed());
    case NoiseMap::Kind::FromGenerator:
      return *kappa.generator();
  }
  fail(ErrorCode::InvalidArgument, "unreachable");
}

NoiseMap kappa_from_generator(const ConcatGenerator& g) {
  switch (g.kind()) {
    case ConcatGenerator::Kind::Linear:
      // f(x) = x/k  =>  kappa(t) = 1/f(1/t) = k t.
      return NoiseMap::parametric(1.0 / g.forward(1.0));
    case ConcatGenerator::Kind::Table: {
      if (!g.table()->is_increasing()) {
        fail(ErrorCode::InvalidArgument, "generator table is not strictly increasing");
      }
      MonotoneTable rec = g.table()->reciprocal_reindexed();
      if (g.scale() != 1.0) {
        auto knots = rec.knots();
        for (auto& kn : knots) kn.second /= g.scale();
        rec = MonotoneTable::strict(std::move(knots));
      }
      return NoiseMap::tabulated(std::move(rec));
    }
    default:
      return NoiseMap::from_generator(g);
  }
}

}  // namespace bgate
