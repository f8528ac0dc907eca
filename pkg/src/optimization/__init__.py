# RIS 마스크 탐색 모듈
