import pytest

from operad_forge.recognize import config_space_poincare, freeness_scan, recognize
from operad_forge.graphs import KHatOperad


def test_poincare_series():
    assert config_space_poincare(2, 3) == (1, 3, 2)
    assert config_space_poincare(3, 3) == (1, 0, 3, 0, 2)
    assert config_space_poincare(1, 4) == (24,)
    assert config_space_poincare(4, 2) == (1, 0, 0, 1)


def test_e1_evidence():
    ev = recognize("k", 1, 3)
    assert ev["components"] == 6
    assert ev["sigma_on_components"]["transitive"] and ev["sigma_on_components"]["free"]
    assert ev["verdict"].startswith("E_1 evidence")


def test_khat_not_en():
    ev = recognize("khat", 2, 3)
    assert ev["components"] == 1
    assert ev["greatest_element_fixed_by_sigma"] is True
    assert not ev["free_on_elements"]["free"]
    assert "not E_n" in ev["verdict"]


def test_k2_consistent():
    ev = recognize("k", 2, 3)
    assert ev["homology"]["betti"] == [1, 3, 2]
    assert ev["verdict"].startswith("consistent with E_2")
    assert "is E_" not in ev["verdict"]


def test_freeness_scan():
    assert freeness_scan(KHatOperad(2, total=True), 3)["free"]
    assert not freeness_scan(KHatOperad(2), 2)["free"]


def test_unknown_family():
    with pytest.raises(ValueError):
        recognize("nope", 1, 2)
