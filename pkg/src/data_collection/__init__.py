# 측정 데이터 수집/로드 모듈
