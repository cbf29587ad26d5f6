#include <doctest.h>

#include <algorithm>
#include <random>

#include "inflnet/data/dataset.hpp"
#include "inflnet/data/supervised.hpp"
#include "inflnet/models/memory.hpp"
#include "inflnet/models/network.hpp"
#include "inflnet/models/reference.hpp"
#include "oracles.hpp"

using namespace inflnet;
using namespace inflnet::models;

namespace {

Matrix random_matrix(Index r, Index c, nn::Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> n01;
  Matrix m(r, c);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = scale * n01(rng);
  return m;
}

NetworkSpec make(ModelKind kind, Index L, Index n, Index Q, Index p, Index N, Index M, Index Lw = 0, Index Lz = 0) {
  NetworkSpec s;
  s.kind = kind;
  s.lags = kind == ModelKind::FfLstm ? 0 : L;
  s.lags_w = Lw;
  s.lags_z = Lz;
  s.nodes = n;
  s.layers = Q;
  s.state = p;
  s.pool_width = N;
  s.cpi_width = M;
  return s;
}

Index tensor_total(const Network& net) {
  Index total = 0;
  for (const auto& t : net.tensors()) total += t.size();
  return total;
}

data::PreparedDataset toy_dataset(Index T, Index N, nn::Rng& rng) {
  const Matrix panel = random_matrix(T, N, rng);
  const Vector target = panel.col(0) * 0.01;
  return data::make_dataset(panel, target, {0, 1}, 0, data::split_samples(T, data::SplitSpec::fractions(0.6, 0.2, 0.2)));
}

}  // namespace

TEST_CASE("closed-form parameter counts reproduce the reference configurations") {
  const Index N = 118, M = 10;
  CHECK(param_count(make(ModelKind::FfCpi, 24, 128, 4, 0, N, M)) == 80513);
  CHECK(param_count(make(ModelKind::FfPool, 48, 128, 3, 0, N, M)) == 758273);
  CHECK(param_count(make(ModelKind::LstmPool, 48, 128, 4, 2, N, M)) == 51017);
  CHECK(param_count(make(ModelKind::LstmAll, 48, 128, 4, 2, N, M)) == 51097);
  CHECK(param_count(make(ModelKind::FfLstm, 0, 128, 4, 2, N, M, 24, 48)) == 81737);
}

TEST_CASE("assembled widths follow the architecture") {
  const Index N = 118, M = 10;
  const Network ff(make(ModelKind::FfCpi, 24, 128, 4, 0, N, M));
  CHECK(ff.dense().input_width() == 240);
  const Network all(make(ModelKind::LstmAll, 48, 128, 4, 2, N, M));
  CHECK(all.lstm().input_width() == 128);
  const Network hybrid(make(ModelKind::FfLstm, 0, 128, 4, 2, N, M, 24, 48));
  CHECK(hybrid.dense().input_width() == 242);
  CHECK(hybrid.spec().input_width() == N * 48 + M * 24);
}

TEST_CASE("closed form equals the assembled scalar count on random specs") {
  nn::Rng rng(31);
  std::uniform_int_distribution<int> kind(0, 4), small(1, 9), lags(1, 12), layers(1, 4);
  for (int i = 0; i < 100; ++i) {
    const auto k = static_cast<ModelKind>(kind(rng));
    const Index p = has_lstm(k) ? small(rng) : 0;
    const auto s = make(k, lags(rng), small(rng), layers(rng), p, small(rng), small(rng),
                        k == ModelKind::FfLstm ? lags(rng) : 0, k == ModelKind::FfLstm ? lags(rng) : 0);
    const Network net(s);
    CHECK(param_count(s) == net.param_count());
    CHECK(param_count(s) == tensor_total(net));
  }
}

TEST_CASE("spec validation and text round trip") {
  auto s = make(ModelKind::FfLstm, 0, 16, 2, 3, 20, 4, 6, 12);
  CHECK(NetworkSpec::parse(s.to_string()).to_string() == s.to_string());
  auto bad = make(ModelKind::FfCpi, 6, 8, 1, 2, 5, 3);
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  auto no_state = make(ModelKind::LstmPool, 6, 8, 1, 0, 5, 3);
  CHECK_THROWS_AS(no_state.validate(), ValidationError);
  auto no_lags = make(ModelKind::FfLstm, 0, 8, 1, 2, 5, 3, 0, 4);
  CHECK_THROWS_AS(no_lags.validate(), ValidationError);
  CHECK_THROWS_AS(NetworkSpec::parse("kind=ff_cpi lags=x"), ParseError);
  CHECK_THROWS_AS(parse_kind("rnn"), ValidationError);
}

TEST_CASE("zero parameters predict zero") {
  const Network net(make(ModelKind::LstmAll, 3, 4, 2, 2, 5, 2));
  nn::Rng rng(1);
  const Vector p = Vector::Zero(net.param_count());
  CHECK(net.predict(p, random_matrix(4, net.spec().input_width(), rng)).isZero());
}

TEST_CASE("network forward equals composing the cell and the stack") {
  nn::Rng rng(12);
  const Index N = 4, M = 3;
  const Network net(make(ModelKind::FfLstm, 0, 5, 2, 3, N, M, 2, 4));
  const Vector p = random_matrix(net.param_count(), 1, rng, 0.5).col(0);
  const Matrix x = random_matrix(6, net.spec().input_width(), rng);
  std::vector<Matrix> seq;
  for (Index lag = 3; lag >= 0; --lag) seq.push_back(x.middleCols(lag * N, N));
  const Matrix f = net.lstm().forward(nn::as_span(p), seq);
  Matrix dense_in(6, M * 2 + 3);
  dense_in << x.rightCols(M * 2), f;
  const Vector expect = net.dense().forward(nn::as_span(p), dense_in);
  CHECK((net.predict(p, x) - expect).cwiseAbs().maxCoeff() <= 1e-12);

  const Network all(make(ModelKind::LstmAll, 3, 4, 1, 2, N, M));
  const Vector q = random_matrix(all.param_count(), 1, rng, 0.5).col(0);
  const Matrix xa = random_matrix(5, all.spec().input_width(), rng);
  std::vector<Matrix> seq_all;
  for (Index lag = 2; lag >= 0; --lag) {
    Matrix step(5, N + M);
    step << xa.middleCols(lag * N, N), xa.middleCols(N * 3 + lag * M, M);
    seq_all.push_back(step);
  }
  const Vector expect_all = all.dense().forward(nn::as_span(q), all.lstm().forward(nn::as_span(q), seq_all));
  CHECK((all.predict(q, xa) - expect_all).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("network gradients match central differences for every kind") {
  nn::Rng rng(77);
  const std::vector<NetworkSpec> specs = {
      make(ModelKind::FfCpi, 3, 4, 2, 0, 3, 2),           make(ModelKind::FfPool, 2, 5, 3, 0, 3, 2),
      make(ModelKind::LstmPool, 4, 4, 2, 3, 3, 2),        make(ModelKind::LstmAll, 5, 3, 1, 2, 3, 2),
      make(ModelKind::FfLstm, 0, 4, 2, 2, 3, 2, 3, 4),
  };
  for (const auto& s : specs) {
    const Network net(s);
    const Vector p = random_matrix(net.param_count(), 1, rng, 0.6).col(0);
    const Matrix x = random_matrix(5, s.input_width(), rng);
    const Vector y = random_matrix(5, 1, rng).col(0);
    CAPTURE(s.to_string());
    CHECK(oracle::gradient_relative_error(net, p, x, y) <= 1e-6);
  }
}

TEST_CASE("FF_LSTM with a silent LSTM path reproduces FF_CPI") {
  nn::Rng rng(5);
  const Index N = 6, M = 3, Lw = 4, Lz = 5, n = 7, Q = 3, p = 2;
  const Network hybrid(make(ModelKind::FfLstm, 0, n, Q, p, N, M, Lw, Lz));
  const Network ff(make(ModelKind::FfCpi, Lw, n, Q, 0, N, M));
  Vector hp = random_matrix(hybrid.param_count(), 1, rng).col(0);
  hp.head(hybrid.lstm().param_count()).setZero();
  Vector fp(ff.param_count());
  const auto H = nn::as_span(hp);
  auto F = nn::as_span(fp);
  for (Index l = 0; l <= Q; ++l) {
    auto wf = nn::view(F, ff.dense().weight(l));
    const auto wh = nn::view(H, hybrid.dense().weight(l));
    if (l == 0) {
      wf = wh.leftCols(M * Lw);
    } else {
      wf = wh;
    }
    nn::view(F, ff.dense().bias(l)) = nn::view(H, hybrid.dense().bias(l));
  }
  const Matrix x = random_matrix(20, hybrid.spec().input_width(), rng);
  const Vector a = hybrid.predict(hp, x);
  const Vector b = ff.predict(fp, x.rightCols(M * Lw));
  CHECK(a == b);

  // zeroing the memory inputs too leaves the output unchanged
  nn::view(nn::as_span(hp), hybrid.dense().weight(0)).rightCols(p).setZero();
  CHECK(hybrid.predict(hp, x) == b);
}

TEST_CASE("prediction has no hidden state between calls") {
  nn::Rng rng(2);
  const Network net(make(ModelKind::LstmPool, 6, 5, 2, 3, 4, 2));
  const Vector p = random_matrix(net.param_count(), 1, rng).col(0);
  const Matrix x = random_matrix(3, net.spec().input_width(), rng);
  const Vector first = net.predict(p, x);
  net.predict(p, random_matrix(3, net.spec().input_width(), rng));
  CHECK(net.predict(p, x) == first);
  CHECK_THROWS_AS(net.predict(p, random_matrix(3, 7, rng)), ShapeError);
}

TEST_CASE("checkpoint load rebuilds the network and rejects mismatches") {
  nn::Rng rng(4);
  const Network net(make(ModelKind::FfLstm, 0, 6, 2, 2, 5, 3, 2, 3));
  const Vector p = random_matrix(net.param_count(), 1, rng).col(0);
  const auto ckpt = make_checkpoint(net, p);
  const auto [loaded, params] = load_checkpoint(nn::parse_checkpoint(nn::serialize_checkpoint(ckpt)));
  const Matrix x = random_matrix(4, net.spec().input_width(), rng);
  CHECK(loaded.predict(params, x) == net.predict(p, x));

  auto broken = ckpt;
  broken.spec = make(ModelKind::FfLstm, 0, 7, 2, 2, 5, 3, 2, 3).to_string();
  CHECK_THROWS_AS(load_checkpoint(broken), ParseError);
}

TEST_CASE("internal memory covers every window and stays bounded") {
  nn::Rng rng(8);
  auto ds = toy_dataset(90, 6, rng);
  const Index L = 5, h = 3;
  const Network net(make(ModelKind::LstmPool, L, 4, 1, 2, ds.z_width(), ds.w_width()));
  const Vector p = random_matrix(net.param_count(), 1, rng, 2.0).col(0);
  const auto mem = extract_internal_memory(net, p, ds, h);
  CHECK(mem.memory.rows() == 2);
  CHECK(mem.memory.cols() == ds.rows() - h - L + 1);
  CHECK(mem.memory.cwiseAbs().maxCoeff() < 1.0);
  CHECK(mem.correlations.size() == 2);
  CHECK(mem.correlations.cwiseAbs().maxCoeff() <= 1.0);

  // identical windows give identical memory
  ds.matrix.setConstant(0.3);
  const auto flat = extract_internal_memory(net, p, ds, h);
  for (Index j = 1; j < flat.memory.cols(); ++j) CHECK(flat.memory.col(j) == flat.memory.col(0));

  const Network ff(make(ModelKind::FfCpi, L, 4, 1, 0, ds.z_width(), ds.w_width()));
  CHECK_THROWS_AS(extract_internal_memory(ff, Vector::Zero(ff.param_count()), ds, h), ValidationError);
}

TEST_CASE("trailing inflation sums the last twelve months") {
  nn::Rng rng(1);
  const auto ds = toy_dataset(40, 3, rng);
  const Vector r = trailing_inflation(ds, 12);
  CHECK(std::isnan(r(10)));
  CHECK(r(11) == doctest::Approx(ds.target.head(12).sum()));
  CHECK(r(30) == doctest::Approx(ds.target.segment(19, 12).sum()));
}

TEST_CASE("validation selection picks the lowest error, ties by seed") {
  CHECK(select_by_validation({{5, 0.3}}) == 0);
  std::vector<Candidate> c = {{3, 0.5}, {1, 0.2}, {9, 0.0}, {2, 0.7}};
  CHECK(c[select_by_validation(c)].seed == 9);
  std::vector<Candidate> tie = {{7, 0.1}, {4, 0.1}, {6, 0.2}};
  CHECK(tie[select_by_validation(tie)].seed == 4);
  std::sort(tie.begin(), tie.end(), [](auto a, auto b) { return a.seed > b.seed; });
  do {
    CHECK(tie[select_by_validation(tie)].seed == 4);
  } while (std::next_permutation(tie.begin(), tie.end(), [](auto a, auto b) { return a.seed > b.seed; }));
  CHECK_THROWS_AS(select_by_validation({}), ValidationError);
}

TEST_CASE("reference configurations carry the tuned hyperparameters") {
  const Index expected[] = {80513, 758273, 51017, 51097, 81737};
  for (int k = 0; k < 5; ++k) {
    auto ref = reference_config(static_cast<ModelKind>(k));
    ref.spec.pool_width = 118;
    ref.spec.cpi_width = 10;
    CHECK(param_count(ref.spec) == expected[k]);
  }
  CHECK(reference_config(ModelKind::FfCpi).train.epochs == 200);
  CHECK(reference_config(ModelKind::LstmAll).train.batch_size == nn::kFullBatch);
  CHECK(reference_config(ModelKind::FfLstm).train.batch_size == 128);
}
