"""
Inducing topic networks from a four-text corpus
===============================================

Two pairs of linked texts, each pair edited by its own two authors.
"""

from topicnets.corpus import build_lmn
from topicnets.induction import DefinitionalSetting, build_mtn, induce_atn, induce_ttn, induce_wtn
from topicnets.synthetic import toy_fixture

# the bundled fixture: corpus, edit history, a flat topic scheme and fixed classifications
corpus, history, scheme, classifier = toy_fixture()
lmn = build_lmn(corpus, history)
print(lmn.text_layer)
print(lmn.author_layer)

setting = DefinitionalSetting(scheme, classifier, lmn, "toy")


def show(net):
    print(f"-- {net.mode}")
    for v in net.vertex_objects():
        print(f"  mu({v.label}) = {v.weight:g}")
    for a in net.arc_objects():
        print(f"  nu({a.src}, {a.dst}) = {a.weight:g}")


# text links only
ttn = induce_ttn(setting)
show(ttn)

# author activity and co-authorship re-weight the same evidence
atn = induce_atn(setting)
show(atn)

# shared word types between linked texts add arc weight
wtn = induce_wtn(setting)
show(wtn)

mtn = build_mtn([ttn, atn, wtn])
print("margin arcs joining equally labelled vertices:", mtn.margin_count)
print(ttn.to_dot("toy_ttn"))
