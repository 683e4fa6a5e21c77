# Closed-form bounds and the triple lemma machinery
