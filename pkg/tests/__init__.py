# empty file -- turns directory into a package so 
#               'python -m unittest discover' works. 