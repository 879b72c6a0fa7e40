from partset import Morphism, codiscrete, discrete
from partset.categories import parallel_pair_category
from partset.dot import diagram_to_dot, morphism_to_dot, object_to_dot
from partset.presheaves import parallel_pair


def test_object_clusters():
    text = object_to_dot(codiscrete(2), "I")
    assert text.count("subgraph") == 2
    assert '"I:0" [label="0"];' in text and '"I:1" [label="1"];' in text


def test_empty_object_still_renders():
    text = object_to_dot(discrete(0), "E")
    assert '"E:empty"' in text


def test_morphism_edges():
    f = Morphism(discrete(2), codiscrete(2), [0, 1])
    text = morphism_to_dot(f, "i1", "A", "A")
    assert '"A:0" -> "A\'' in text
    assert text.count("->") == 2


def test_diagram_has_one_cluster_per_object():
    f = Morphism(discrete(1), codiscrete(2), [0])
    g = Morphism(discrete(1), codiscrete(2), [1])
    D = parallel_pair(f, g)
    assert D.category == parallel_pair_category()
    text = diagram_to_dot(D, "D")
    assert '"cluster_D(0)"' in text and '"cluster_D(1)"' in text
    assert text.count('[label="f"]') == 1 and text.count('[label="g"]') == 1
