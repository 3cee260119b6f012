import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from bookrep.estimators import BookRepClassifier, CensusTransformer, check_label, check_reps
from bookrep.model import parse

from conftest import OPTION1, REP_4S1

REP_4S1_MIRROR = "13,14,15|24,26|35,36|46|25"


def test_check_reps_accepts_several_shapes():
    assert len(check_reps(OPTION1)) == 1
    assert len(check_reps([OPTION1, parse(REP_4S1)])) == 2
    assert len(check_reps(np.array([[OPTION1], [REP_4S1]]))) == 2


def test_check_reps_names_bad_sample():
    with pytest.raises(ValueError, match="sample 1"):
        check_reps([OPTION1, "13,24|14,15|25,26|35,36|46"])
    with pytest.raises(ValueError, match="sample 0"):
        check_reps(["13,1x"])
    with pytest.raises(ValueError):
        check_reps(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        check_reps(5)


def test_check_label():
    with pytest.raises(ValueError):
        check_label("nope")


def test_params_and_clone():
    est = BookRepClassifier(label="canonical", jobs=2)
    assert est.get_params() == {"label": "canonical", "cache": None, "jobs": 2}
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    est.set_params(label="index")
    assert est.label == "index"


def test_unfitted_raises():
    with pytest.raises(NotFittedError):
        BookRepClassifier().predict([OPTION1])
    with pytest.raises(NotFittedError):
        CensusTransformer().transform([OPTION1])


def test_classifier_predicts_appendix_labels(orbit_cache):
    est = BookRepClassifier(cache=orbit_cache).fit()
    got = est.predict([REP_4S1, REP_4S1_MIRROR, "13,14|24|36|15|26,46|25,35"])
    assert list(got) == ["4s1", "4s1*", "6s2"]
    assert list(est.predict_min_sheets([OPTION1, REP_4S1])) == [3, 4]
    assert len(est.classes_) == 57


def test_classifier_other_labels(orbit_cache):
    idx = BookRepClassifier(label="index", cache=orbit_cache).fit()
    assert list(idx.predict([OPTION1])) == [0]
    canon = BookRepClassifier(label="canonical", cache=orbit_cache).fit()
    assert list(canon.predict(["13,14,46|26,35,36|15,24,25"])) == [OPTION1]


def test_transformer_counts():
    tr = CensusTransformer(with_totals=True).fit([OPTION1])
    out = tr.transform([OPTION1, REP_4S1])
    assert list(tr.get_feature_names_out()) == [
        "hopf", "solomon", "trefoil_L", "trefoil_R", "fig8", "links", "knotted"]
    assert out.tolist() == [[1, 0, 0, 0, 0, 1, 0], [3, 0, 0, 1, 0, 3, 1]]
    assert out.dtype.kind == "i"


def test_transformer_in_pipeline():
    pipe = make_pipeline(CensusTransformer())
    assert pipe.fit_transform([REP_4S1_MIRROR]).tolist() == [[3, 0, 1, 0, 0]]


def test_signatures_equal_for_equivalent_reps():
    tr = CensusTransformer()
    a, b = tr.signatures(["13,14|24,26|35,36|15|46|25", "13,14|24|36|15|26,46|25,35"])
    assert a == b
