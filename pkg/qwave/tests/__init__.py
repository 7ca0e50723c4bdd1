"""
QWave Test Suite
Ölçüler, spektral ızgara, dinamik, çekiciler ve CLI testleri
"""
