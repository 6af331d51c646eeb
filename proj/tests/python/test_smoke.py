import json
import math

import numpy as np
import pytest

import zloch


def test_flux_bundle_vortex_section_class():
    t = zloch.Torus([16, 16, 16])
    m = zloch.LatticeManifold.torus([16, 16, 16])
    b = zloch.constant_flux_bundle(t, [0, 0, 1])
    assert list(zloch.chern_coordinates(b)) == [0, 0, 1]
    s = zloch.vortex_section(b, [zloch.VortexSeed(2, 3, 4, 1)])
    chain = zloch.extract_vortex_chain(s, b)
    assert zloch.is_closed(chain)
    assert chain.weighted_length() == 16
    assert zloch.chain_class(chain, m) == zloch.poincare_dual([0, 0, 1], m) == [0, 0, 1]


def test_random_section_matches_ground_truth():
    t = zloch.Torus([12, 12, 12])
    m = zloch.LatticeManifold.torus([12, 12, 12])
    b = zloch.constant_flux_bundle(t, [1, -1, 2])
    section, vorticity = zloch.random_section(b, seed=3)
    chain = zloch.extract_vortex_chain(section, b)
    assert list(chain.coeff) == list(vorticity)
    assert zloch.chain_class(chain, m) == [1, -1, 2]


def test_errors_are_python_exceptions():
    loop = [complex(math.cos(2 * math.pi * 5 * k / 8), math.sin(2 * math.pi * 5 * k / 8)) for k in range(8)]
    with pytest.raises(zloch.UndersampledError):
        zloch.winding_number(loop)
    with pytest.raises(zloch.ZlochError):
        zloch.Torus([0, 4, 4])


def test_lambda_vertical_circle():
    m = zloch.LatticeManifold.surface_times_circle(1, 4)
    graph = json.dumps({"vertices": ["p"],
                        "edges": [{"id": "c", "tail": "p", "head": "p", "polyline": [[0, 0, 0], [0, 0, 4]]}]})
    assert zloch.lambda_contains(graph, m, [0, 0, 3])
    assert not zloch.lambda_contains(graph, m, [1, 0, 0])


def test_shortest_flow():
    length, optimal, witness = zloch.shortest_flow([4, 4, 4], [0, 0, 2])
    assert (length, optimal) == ("8", True)
    assert sum(abs(x) for x in witness) == 8


def test_moment_map_and_frames():
    rng = np.random.default_rng(0)
    psis = [rng.normal(size=2) + 1j * rng.normal(size=2) for _ in range(3)]
    b = zloch.pair_tuple(psis)
    assert b.shape == (2, 6)
    assert np.abs(zloch.mu(b)).max() <= 1e-12
    assert zloch.is_mu_null(b)
    frame = zloch.kernel_frame(b)
    assert frame.shape == (6, 4)
    assert np.abs(b @ frame).max() < 1e-10
    frames = zloch.cp1_frame_field(32, 32)
    assert zloch.pullback_detS_chern(frames, 32, 32) == -1
    assert zloch.obstruction_a([1, -2]) == 5
