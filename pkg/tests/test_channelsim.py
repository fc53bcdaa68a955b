import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from alglattice import channelsim as cs
from alglattice import codes
from alglattice import construction as cn
from alglattice import cosetcode as cc
from alglattice import numberfield as nf
from alglattice.errors import ConstellationTooLarge

K5 = nf.realsubfield_field(5)
REF = cc.CosetCodebook(cn.make_spec(K5, codes.systematic_form([[1, 2]], 5)), 1)


def test_splitmix_reference_outputs():
    # published SplitMix64 outputs for seed 1234567
    g = cs.SplitMix64(1234567)
    assert [g.next_u64() for _ in range(3)] == [
        6457827717110365317, 3203168211198807973, 9817491932198370423]


def test_uniform_and_normal_ranges():
    g = cs.SplitMix64(5)
    u = [g.uniform() for _ in range(10_000)]
    assert 0 <= min(u) and max(u) < 1
    z = np.array(cs.SplitMix64(6).normals(20_000))
    assert abs(z.mean()) < 0.03 and abs(z.std() - 1) < 0.03


def test_randbelow_is_in_range():
    g = cs.SplitMix64(9)
    draws = [g.randbelow(7) for _ in range(7000)]
    assert set(draws) == set(range(7))


@pytest.mark.parametrize("sigma_h", [0.5, 1.0, 2.0])
def test_fading_second_moment(sigma_h):
    g = cs.SplitMix64(42)
    h = cs.fading_magnitudes(g, sigma_h, 100_000)
    assert abs(np.mean(h ** 2) / (2 * sigma_h ** 2) - 1) < 0.03


def test_trial_streams_are_distinct():
    firsts = {cs.trial_stream(7, t).next_u64() for t in range(1000)}
    assert len(firsts) == 1000


def test_noiseless_is_error_free():
    res = cs.simulate(REF, cs.ChannelConfig(sigma_b=1e-9, sigma_e=1e-9, trials=1000, seed=3))
    row, = res.rows
    assert row.bob_per == 0 and row.bob_ser == 0 and row.eve_ser == 0


def test_same_seed_same_result():
    cfg = cs.ChannelConfig(snr_list=(0, 10), trials=300, seed=11)
    assert cs.simulate(REF, cfg).to_csv() == cs.simulate(REF, cfg).to_csv()
    other = cs.ChannelConfig(snr_list=(0, 10), trials=300, seed=12)
    assert cs.simulate(REF, cfg).to_csv() != cs.simulate(REF, other).to_csv()


def test_single_point_constellation():
    zero = cc.CosetCodebook(cn.make_spec(K5, codes.systematic_form([], 5, 2)), 0)
    res = cs.simulate(zero, cs.ChannelConfig(snr_list=(0,), trials=50))
    assert res.rows[0].bob_per == res.rows[0].bob_ser == res.rows[0].eve_ser == 0


def test_rates_bounded_and_ordered():
    res = cs.simulate(REF, cs.ChannelConfig(snr_list=(0, 5, 10), trials=500, seed=1))
    for r in res.rows:
        assert 0 <= r.bob_ser <= r.bob_per <= 1 and 0 <= r.eve_ser <= 1 and r.trials == 500


def test_csv_header():
    res = cs.simulate(REF, cs.ChannelConfig(trials=10))
    assert res.to_csv().splitlines()[0] == "snr_db,bob_per,bob_ser,eve_ser,trials"


def test_constellation_too_large():
    big = cc.CosetCodebook(cn.make_spec(K5, codes.systematic_form([[1, 2]], 5)), 3)
    with pytest.raises(ConstellationTooLarge):
        cs.simulate(big, cs.ChannelConfig(trials=1))


def test_config_validation():
    with pytest.raises(ValueError):
        cs.ChannelConfig(sigma_b=0)
    with pytest.raises(ValueError):
        cs.ChannelConfig(trials=0)


def test_vectorize_examples():
    X = np.arange(6.0).reshape(2, 3)
    assert cs.vectorize_check(X, [1.0, 1.0])
    assert cs.vectorize_check(np.array([[1.0, -2.0, 3.0]]), [0.5])


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2 ** 32))
def test_vectorize_identity(n, N, seed):
    rng = np.random.default_rng(seed)
    assert cs.vectorize_check(rng.normal(size=(n, N)), np.abs(rng.normal(size=n)))


def test_point_matrix_matches_column_major_vec():
    pt = cc.coset_encode(REF, [2], [1, -1, 0, 1])
    X = pt.matrix(REF.n)
    assert X.shape == (2, 2)
    assert np.array_equal(X.flatten(order="F"), pt.embedding)
